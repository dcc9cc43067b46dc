#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hmfront/bvp.hpp"
#include "hmfront/newton.hpp"

namespace hmfront {

enum class Scheme { imex_euler, imex_cn };

struct EvolveConfig {
    Ramp ramp{};
    double c = 0.0;
    double dt = 0.01;
    double t_end = 200.0;
    Scheme scheme = Scheme::imex_cn;
    int record_every = 10;
    bool include_ramp = true;   // switch off for the pure advection-diffusion check
    bool include_cubic = true;

    /// Throws std::invalid_argument on dt <= 0, t_end < 0, record_every < 1, or a bad tanh epsilon.
    void validate() const;
};

class EvolveError : public std::runtime_error {
public:
    EvolveError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/// Method-of-lines integrator for u_t = u_xx + c u_x - μ(x) u - u³ with the
/// boundary values of the initial state held fixed.
///
/// The linear part L = D2 + c·D1 - diag(μ + s) is implicit, with s = 3u_s² frozen
/// from a stabilizing state u_s; the remainder -u³ + s·u is explicit. Both
/// schemes share the single factorization of I - θ·dt·L (θ = 1 or 1/2).
/// imex_cn is Crank–Nicolson with Adams–Bashforth-2 on the explicit part; its
/// first step uses the explicit term at the old level only.
class Stepper {
public:
    Stepper(const Grid& g, const EvolveConfig& cfg, const std::vector<double>& stabilizer);

    /// Advances one step. Throws EvolveError on a non-finite state.
    std::vector<double> step(const std::vector<double>& u);
    void reset_history() { previous_explicit_.reset(); }
    long steps_taken() const { return steps_; }

private:
    std::vector<double> explicit_part(const std::vector<double>& u) const;

    Grid grid_;
    EvolveConfig cfg_;
    std::vector<double> s_;
    BandedMatrix lin_;  // L with zero boundary rows
    std::optional<BandedLU> lu_;
    std::optional<std::vector<double>> previous_explicit_;
    long steps_ = 0;
};

/// One step from u (stabilized about u itself).
std::vector<double> step(const std::vector<double>& u, const Grid& g, const EvolveConfig& cfg);

struct EvolveResult {
    FrontProfile final;
    std::vector<std::pair<double, double>> deviation_history;  // (t, ‖u(t) - u_ref‖∞)
    double measured_rate = 0.0;  // slope of ln(deviation) over the fitted tail
    double fit_t_lo = 0.0, fit_t_hi = 0.0;
    long steps = 0;
};

/// Integrates from `initial` to cfg.t_end. With a reference profile the
/// deviation is ‖u - u_ref‖∞; without one it is ‖u^{n+1} - u^n‖∞/dt. The rate
/// is the least-squares log-slope over records with deviation in
/// [1e-11, 1e-4·max deviation] (or the last half of the records above 1e-12 if
/// fewer than 5 qualify). Stabilized about the reference when given, else
/// about the initial state.
EvolveResult evolve(const FrontProfile& initial, const EvolveConfig& cfg,
                    const std::optional<std::vector<double>>& reference = std::nullopt);

/// Smooth bump of unit height centred at x0 with half-width w, zero at both ends.
std::vector<double> bump(const Grid& g, double x0, double w);

struct InnerScalingOptions {
    double delta = 0.1;
    double h_inner = kDefaultSpacing;  // tanh grid uses h_inner·ε^{-1/3}
    double window = -1.0;              // |x| range of the overlay; <0 means ε^{-1/3}
    bool evolve_cross_check = false;
    double evolve_dt = 1.0;
    double evolve_t_end = 3000.0;
    SolverConfig solver{};
};

struct OverlayRow {
    double x = 0.0;
    double u_tanh = 0.0;
    double u_inner_scaled = 0.0;
    double gap = 0.0;
};

struct InnerScalingReport {
    double eps = 0.0;
    double c = 0.0;         // drift in the tanh equation
    double c_scaled = 0.0;  // ε^{-1/3} c, drift of the linear-ramp front
    FrontProfile tanh_front;
    FrontProfile inner_front;
    SolveReport tanh_report;
    std::vector<OverlayRow> rows;
    double sup_gap = 0.0;
    double x_delta_tanh = 0.0;          // level ε^{1/3} δ
    double x_delta_inner_scaled = 0.0;  // ε^{-1/3} x̃_δ(c̃)
    double interface_gap = 0.0;
    std::optional<double> evolve_gap;   // ‖u_evolved - u_Newton‖∞ when cross-checked
};

/// Tanh-ramp front (Newton on the tanh BVP, Dirichlet √tanh(-εx_min) and 0)
/// against the scaled linear-ramp front ε^{1/3} ũ(ε^{1/3} x; ε^{-1/3} c).
/// `inner` must be a converged linear-ramp profile at ε^{-1/3} c.
InnerScalingReport compare_inner_scaling(double eps, double c, const FrontProfile& inner,
                                         const InnerScalingOptions& opt = {});

}  // namespace hmfront
