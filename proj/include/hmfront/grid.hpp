#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hmfront {

/// Uniform mesh x_i = x_min + i·h, i = 0..n-1.
class Grid {
public:
    static constexpr std::size_t kMinNodes = 9;

    Grid() = default;
    /// Throws std::invalid_argument unless n >= 9 and x_max > x_min.
    Grid(double x_min, double x_max, std::size_t n);

    /// Grid whose end points are the integer multiples of h enclosing [x_min, x_max].
    /// Two such grids with the same h share nodes on their overlap.
    static Grid on_lattice(double x_min, double x_max, double h);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double h() const { return h_; }
    double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * h_; }
    std::vector<double> nodes() const;

    /// Index offset k with x(i) == other.x(i + k) when both grids share spacing
    /// and node lattice (to 1e-9·h); empty otherwise.
    std::optional<std::ptrdiff_t> node_offset_in(const Grid& other) const;

    /// Nearest node index to x, clamped to the grid.
    std::size_t nearest(double x) const;

    bool operator==(const Grid& other) const = default;

private:
    double x_min_ = 0.0;
    double x_max_ = 1.0;
    std::size_t n_ = 0;
    double h_ = 0.0;
};

/// Square matrix with equal lower and upper bandwidth, stored as a dense band.
class BandedMatrix {
public:
    static constexpr std::size_t kMaxBandwidth = 4;

    BandedMatrix() = default;
    BandedMatrix(std::size_t rows, std::size_t bandwidth);

    std::size_t rows() const { return rows_; }
    std::size_t bandwidth() const { return bw_; }

    bool in_band(std::size_t i, std::size_t j) const;
    /// Entry (i, j); zero outside the band.
    double operator()(std::size_t i, std::size_t j) const;
    /// Mutable entry; throws std::out_of_range outside the band.
    double& at(std::size_t i, std::size_t j);

    void set_identity_row(std::size_t i);
    void add_to_diagonal(std::span<const double> d, double scale = 1.0);

    std::vector<double> apply(std::span<const double> x) const;
    double norm_inf() const;

private:
    std::size_t rows_ = 0;
    std::size_t bw_ = 0;
    std::vector<double> band_;  // row-major, width 2·bw+1, column j at slot j-i+bw
};

/// Finite-difference weights for the m-th derivative at z from the given
/// nodes (Fornberg's recursion).
std::vector<double> fd_weights(double z, std::span<const double> nodes, int derivative);

/// One row of a difference operator: u'_i ≈ Σ_k weights[k] · u[first + k].
struct StencilRow {
    std::size_t first = 0;
    std::vector<double> weights;
};

/// Fourth-order second-derivative row at node i (1 <= i <= n-2): centered
/// five-point in the interior, six-point one-sided at i = 1 and i = n-2.
StencilRow d2_row(const Grid& g, std::size_t i);

/// Fourth-order first-derivative row at node i (1 <= i <= n-2) on a
/// five-point window shifted one node toward +x for upwind_sign = +1, toward
/// -x for -1, centered for 0; windows are clamped at the boundaries.
StencilRow d1_row(const Grid& g, std::size_t i, int upwind_sign);

/// Second derivative at interior nodes; the two boundary entries are zero.
std::vector<double> d2_apply(const Grid& g, std::span<const double> u);

/// First derivative at interior nodes; the two boundary entries are zero.
std::vector<double> d1_apply(const Grid& g, std::span<const double> u, int upwind_sign);

/// A += scale · D2 on interior rows.
void add_d2(BandedMatrix& a, const Grid& g, double scale = 1.0);
/// A += scale · D1 on interior rows.
void add_d1(BandedMatrix& a, const Grid& g, int upwind_sign, double scale = 1.0);

/// sign(c) as the upwind direction for the drift term c·u_x.
inline int upwind_sign_for(double c) { return c > 0.0 ? 1 : (c < 0.0 ? -1 : 0); }

}  // namespace hmfront
