#pragma once

#include <optional>
#include <vector>

#include "hmfront/grid.hpp"

namespace hmfront {

/// Spatial parameter ramp μ(x) entering as -μ(x)·u: linear μ = x or μ = tanh(εx).
struct Ramp {
    enum class Kind { linear, tanh };
    Kind kind = Kind::linear;
    double epsilon = 0.0;

    static Ramp linear() { return {}; }
    /// Throws std::invalid_argument unless 0 < epsilon < 1.
    static Ramp tanh(double epsilon);

    double operator()(double x) const;
    bool operator==(const Ramp&) const = default;
};

enum class ClosureKind { dirichlet_asymptotic, dirichlet_zero };

/// Dirichlet data at both ends of the truncated domain. The right end is always
/// u = 0. On the left, dirichlet_asymptotic imposes the algebraic left-tail
/// series (linear ramp) or √(-tanh(εx)) (tanh ramp); dirichlet_zero imposes 0.
struct BoundaryClosure {
    ClosureKind kind = ClosureKind::dirichlet_asymptotic;
    int left_order = 1;               // 0, 1 or 2 correction levels
    bool includes_drift_term = true;  // keep the c/x² term of the series

    double left_value(double x_min, double c, const Ramp& ramp) const;
    double right_value() const { return 0.0; }
};

/// One stationary front: nodal values u on grid for drift c and ramp.
struct FrontProfile {
    double c = 0.0;
    Ramp ramp{};
    Grid grid{};
    std::vector<double> u;
    double residual_norm = 0.0;
    bool converged = false;
    std::optional<double> alpha_plus;
    std::optional<double> alpha_minus;

    /// Linear interpolation of u at x (clamped to the grid).
    double value_at(double x) const;
};

struct Domain {
    double x_min = 0.0;
    double x_max = 0.0;
};

inline constexpr double kDefaultSpacing = 0.01;

/// Truncated domain on which the front at drift c is computed.
///   c >= 0: [-max(25, c²/4 + 30), max(15, √c + 15)]
///   c <  0: [-max(25, 4√(-c)), max(15, √(-c) + 15, √(-60c))]
Domain default_domain(double c);

/// default_domain(c) on the h-lattice.
Grid default_grid(double c, double h = kDefaultSpacing);

/// F_i = D2u + c·D1u - μ(x_i) u_i - u_i³ in the interior, u - (boundary data) at both ends.
/// Throws std::invalid_argument on size mismatch or non-finite values.
std::vector<double> residual(const FrontProfile& p, const BoundaryClosure& bc);

/// ∂F/∂u: D2 + c·D1 - diag(μ + 3u²) in the interior, identity rows at both ends.
BandedMatrix jacobian(const FrontProfile& p, const BoundaryClosure& bc);

struct TailFit {
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double right_fit_residual = 0.0;  // max |ln u - shape - (a + b/x)| over the window
    double left_fit_residual = 0.0;   // max |u/√(-x) - 1 - a(x) - α₋ mode| over the window
    double right_window_lo = 0.0, right_window_hi = 0.0;
    double left_window_lo = 0.0, left_window_hi = 0.0;
    double right_log_slope_fitted = 0.0;     // least-squares slope of ln u
    double right_log_slope_predicted = 0.0;  // least-squares slope of the predicted ln-shape
};

/// Fits the tail coefficients of a converged linear-ramp profile.
///
/// The right window is [x_f + 2, x_f + 7] and the left window [x_f - 7, x_f - 2],
/// where x_f is the last node with u > 0.1; both are clipped one unit away from
/// the domain ends, and nodes with u below 1e-300 are dropped. On the right,
/// ln u - shape(x) is fitted by a + b/x and α₊ = e^a. On the left, the remainder
/// of u/√(-x) after the algebraic series is projected on the exponential mode.
/// Throws std::runtime_error when fewer than 8 usable nodes remain in a window.
TailFit fit_tail_coefficients(const FrontProfile& p);

}  // namespace hmfront
