#include "hmfront/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hmfront {

Grid::Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw std::invalid_argument("Grid: requires finite x_min < x_max");
    }
    if (n < kMinNodes) {
        throw std::invalid_argument("Grid: requires at least " + std::to_string(kMinNodes) + " nodes");
    }
    h_ = (x_max - x_min) / static_cast<double>(n - 1);
}

Grid Grid::on_lattice(double x_min, double x_max, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("Grid::on_lattice: h must be positive");
    const double k_lo = std::floor(x_min / h + 1e-9);
    const double k_hi = std::ceil(x_max / h - 1e-9);
    const auto n = static_cast<std::size_t>(k_hi - k_lo) + 1;
    return Grid(k_lo * h, k_hi * h, n);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

std::optional<std::ptrdiff_t> Grid::node_offset_in(const Grid& other) const {
    if (std::abs(h_ - other.h_) > 1e-12 * h_) return std::nullopt;
    const double shift = (x_min_ - other.x_min_) / h_;
    const double k = std::round(shift);
    if (std::abs(shift - k) > 1e-9) return std::nullopt;
    return static_cast<std::ptrdiff_t>(k);
}

std::size_t Grid::nearest(double xq) const {
    const double s = std::round((xq - x_min_) / h_);
    if (s <= 0.0) return 0;
    if (s >= static_cast<double>(n_ - 1)) return n_ - 1;
    return static_cast<std::size_t>(s);
}

BandedMatrix::BandedMatrix(std::size_t rows, std::size_t bandwidth)
    : rows_(rows), bw_(bandwidth), band_(rows * (2 * bandwidth + 1), 0.0) {
    if (bandwidth > kMaxBandwidth) throw std::invalid_argument("BandedMatrix: bandwidth exceeds 4");
}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= rows_) return false;
    return (j >= i ? j - i : i - j) <= bw_;
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const {
    if (!in_band(i, j)) return 0.0;
    return band_[i * (2 * bw_ + 1) + (j + bw_ - i)];
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) throw std::out_of_range("BandedMatrix::at: entry outside band");
    return band_[i * (2 * bw_ + 1) + (j + bw_ - i)];
}

void BandedMatrix::set_identity_row(std::size_t i) {
    const std::size_t w = 2 * bw_ + 1;
    std::fill_n(band_.begin() + static_cast<std::ptrdiff_t>(i * w), w, 0.0);
    at(i, i) = 1.0;
}

void BandedMatrix::add_to_diagonal(std::span<const double> d, double scale) {
    if (d.size() != rows_) throw std::invalid_argument("BandedMatrix::add_to_diagonal: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, i) += scale * d[i];
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
    if (x.size() != rows_) throw std::invalid_argument("BandedMatrix::apply: length mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::size_t j0 = i >= bw_ ? i - bw_ : 0;
        const std::size_t j1 = std::min(rows_ - 1, i + bw_);
        double s = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double BandedMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        const std::size_t j0 = i >= bw_ ? i - bw_ : 0;
        const std::size_t j1 = std::min(rows_ - 1, i + bw_);
        for (std::size_t j = j0; j <= j1; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
    const std::size_t npts = x.size();
    if (npts == 0 || m < 0 || static_cast<std::size_t>(m) >= npts) {
        throw std::invalid_argument("fd_weights: need more nodes than the derivative order");
    }
    const auto mm = static_cast<std::size_t>(m);
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(npts, std::vector<double>(mm + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < npts; ++i) {
        const std::size_t mn = std::min(i, mm);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(npts);
    for (std::size_t j = 0; j < npts; ++j) w[j] = c[j][mm];
    return w;
}

namespace {

// Unit-spacing weights for offsets first_offset .. first_offset+npts-1.
std::vector<double> unit_weights(int first_offset, int npts, int derivative) {
    std::vector<double> xs(static_cast<std::size_t>(npts));
    for (int k = 0; k < npts; ++k) xs[static_cast<std::size_t>(k)] = first_offset + k;
    return fd_weights(0.0, xs, derivative);
}

struct StencilTables {
    std::vector<double> d2_center = unit_weights(-2, 5, 2);
    std::vector<double> d2_left = unit_weights(-1, 6, 2);    // node 1 of the grid
    std::vector<double> d2_right = unit_weights(-4, 6, 2);   // node n-2
    std::array<std::vector<double>, 5> d1{unit_weights(-4, 5, 1), unit_weights(-3, 5, 1),
                                          unit_weights(-2, 5, 1), unit_weights(-1, 5, 1),
                                          unit_weights(0, 5, 1)};
};

const StencilTables& tables() {
    static const StencilTables t;
    return t;
}

void check_row(const Grid& g, std::size_t i) {
    if (g.size() < Grid::kMinNodes) throw std::invalid_argument("stencil: grid too small");
    if (i == 0 || i + 1 >= g.size()) throw std::out_of_range("stencil: boundary node has no row");
}

StencilRow scaled(std::size_t first, const std::vector<double>& w, double factor) {
    StencilRow r{first, w};
    for (double& v : r.weights) v *= factor;
    return r;
}

// Σ w_k (u_{first+k} - u_i): exact zero on constants, small roundoff on smooth data.
double apply_row(const StencilRow& r, std::size_t i, std::span<const double> u) {
    const double ui = u[i];
    double s = 0.0;
    for (std::size_t k = 0; k < r.weights.size(); ++k) s += r.weights[k] * (u[r.first + k] - ui);
    return s;
}

void add_row(BandedMatrix& a, const StencilRow& r, std::size_t i, double scale) {
    double row_sum_off = 0.0;
    for (std::size_t k = 0; k < r.weights.size(); ++k) {
        const std::size_t j = r.first + k;
        if (j == i) continue;
        a.at(i, j) += scale * r.weights[k];
        row_sum_off += r.weights[k];
    }
    a.at(i, i) -= scale * row_sum_off;
}

}  // namespace

StencilRow d2_row(const Grid& g, std::size_t i) {
    check_row(g, i);
    const std::size_t n = g.size();
    const double f = 1.0 / (g.h() * g.h());
    const auto& t = tables();
    if (i == 1) return scaled(0, t.d2_left, f);
    if (i == n - 2) return scaled(n - 6, t.d2_right, f);
    return scaled(i - 2, t.d2_center, f);
}

StencilRow d1_row(const Grid& g, std::size_t i, int upwind_sign) {
    check_row(g, i);
    const auto n = static_cast<std::ptrdiff_t>(g.size());
    const int shift = upwind_sign > 0 ? 1 : (upwind_sign < 0 ? -1 : 0);
    std::ptrdiff_t first = static_cast<std::ptrdiff_t>(i) - 2 + shift;
    first = std::clamp<std::ptrdiff_t>(first, 0, n - 5);
    const std::ptrdiff_t rel = first - static_cast<std::ptrdiff_t>(i);  // in [-4, 0]
    return scaled(static_cast<std::size_t>(first), tables().d1[static_cast<std::size_t>(rel + 4)], 1.0 / g.h());
}

std::vector<double> d2_apply(const Grid& g, std::span<const double> u) {
    if (u.size() != g.size()) throw std::invalid_argument("d2_apply: length mismatch");
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) out[i] = apply_row(d2_row(g, i), i, u);
    return out;
}

std::vector<double> d1_apply(const Grid& g, std::span<const double> u, int upwind_sign) {
    if (u.size() != g.size()) throw std::invalid_argument("d1_apply: length mismatch");
    std::vector<double> out(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) out[i] = apply_row(d1_row(g, i, upwind_sign), i, u);
    return out;
}

void add_d2(BandedMatrix& a, const Grid& g, double scale) {
    if (a.rows() != g.size()) throw std::invalid_argument("add_d2: size mismatch");
    for (std::size_t i = 1; i + 1 < g.size(); ++i) add_row(a, d2_row(g, i), i, scale);
}

void add_d1(BandedMatrix& a, const Grid& g, int upwind_sign, double scale) {
    if (a.rows() != g.size()) throw std::invalid_argument("add_d1: size mismatch");
    for (std::size_t i = 1; i + 1 < g.size(); ++i) add_row(a, d1_row(g, i, upwind_sign), i, scale);
}

}  // namespace hmfront
