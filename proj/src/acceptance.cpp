#include "hmfront/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "hmfront/asymptotics.hpp"
#include "hmfront/continuation.hpp"
#include "hmfront/diagnostics.hpp"
#include "hmfront/evolve.hpp"
#include "hmfront/specialfns.hpp"
#include "hmfront/spectrum.hpp"

namespace hmfront {

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ContinuationConfig continuation_config(const AcceptanceOptions& opt) {
    ContinuationConfig cc;
    cc.h = opt.h;
    return cc;
}

FrontProfile seed_for(const AcceptanceOptions& opt) { return hastings_mcleod_seed({}, opt.h); }

// Branch from the c = 0 seed through integer-spaced waypoints toward `to`.
Branch branch_to(const FrontProfile& seed, double to, double spacing, const AcceptanceOptions& opt) {
    return continue_through(seed, waypoints_between(0.0, to, spacing), 0.5, {}, continuation_config(opt));
}

const FrontProfile& at(const Branch& b, double c) {
    for (const BranchPoint& p : b.points) {
        if (p.c == c) return p.profile;
    }
    throw std::runtime_error(fmt("branch has no point at c = %g (stopped at %g)", c, b.last_good_c));
}

// Fronts at the requested c values, grown from one seed in both directions.
std::map<double, FrontProfile> fronts_at(std::vector<double> cs, const AcceptanceOptions& opt) {
    const FrontProfile seed = seed_for(opt);
    std::vector<double> up, down;
    for (double c : cs) (c > 0 ? up : down).push_back(c);
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end(), std::greater<>());
    std::map<double, FrontProfile> out;
    for (const auto* targets : {&up, &down}) {
        std::vector<double> w;
        double last = 0.0;
        for (double c : *targets) {
            if (c == 0.0) continue;
            for (double x : waypoints_between(last, c, 1.0)) w.push_back(x);
            last = c;
        }
        const Branch b = continue_through(seed, w, 0.5, {}, continuation_config(opt));
        for (double c : *targets) out.emplace(c, at(b, c));
    }
    if (std::find(cs.begin(), cs.end(), 0.0) != cs.end()) out.emplace(0.0, seed);
    return out;
}

using Body = std::function<bool(const AcceptanceOptions&, std::string&)>;

struct Entry {
    int id;
    const char* name;
    double budget;
    Body body;
};

bool amplitude_law(const AcceptanceOptions& opt, std::string& m) {
    const Branch b = branch_to(seed_for(opt), -200.0, 5.0, opt);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const BranchPoint& p : b.points) {
        if (p.c > -50.0 || p.c < -200.0) continue;
        const double x = std::pow(-p.c, 0.25), y = p.profile.value_at(0.0);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++k;
    }
    if (b.last_good_c != -200.0 || k < 3) {
        m = fmt("branch stopped at c = %g", b.last_good_c);
        return false;
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double target = std::pow(std::numbers::pi, -0.25);
    m = fmt("slope %.5f vs pi^-1/4 = %.5f over %d points (tol 0.01)", slope, target, k);
    return std::abs(slope - target) <= 0.01;
}

bool front_delay(const AcceptanceOptions& opt, std::string& m) {
    const Branch b = branch_to(seed_for(opt), 12.0, 1.0, opt);
    const double omega = special::omega0().value + opt.omega0_shift;
    bool ok = true;
    m = fmt("Omega0 = %.10f;", omega);
    for (double c : {8.0, 10.0, 12.0}) {
        const double xd = front_position(at(b, c));
        const double pred = -0.25 * c * c - omega * std::pow(15.0 / 16.0, 2.0 / 3.0);
        ok = ok && std::abs(xd - pred) <= 0.5;
        m += fmt(" c=%g x_delta=%.4f pred=%.4f gap=%.3f;", c, xd, pred, std::abs(xd - pred));
    }
    m += " (tol 0.5)";
    return ok;
}

bool reverse_quench(const AcceptanceOptions& opt, std::string& m) {
    const Branch b = branch_to(seed_for(opt), -200.0, 5.0, opt);
    bool ok = true;
    for (double c : {-100.0, -200.0}) {
        const double xd = front_position(at(b, c));
        const double pred = asymptotics::front_loc_negc(c);
        ok = ok && std::abs(xd - pred) <= 1.0;
        m += fmt("c=%g x_delta=%.4f sqrt(-c)=%.4f gap=%.3f; ", c, xd, pred, std::abs(xd - pred));
    }
    m += "(tol 1.0)";
    return ok;
}

bool closed_form(const AcceptanceOptions& opt, std::string& m) {
    const double c = -200.0;
    const auto fronts = fronts_at({c}, opt);
    const FrontProfile& p = fronts.at(c);
    const double lo = -std::sqrt(-c), hi = front_position(p);
    double gap = 0.0, where = 0.0;
    for (std::size_t i = 0; i < p.u.size(); ++i) {
        const double x = p.grid.x(i);
        if (x < lo || x > hi) continue;
        const double e = asymptotics::erf_profile(x, c);
        const double r = std::abs(p.u[i] - e) / e;
        if (r > gap) gap = r, where = x;
    }
    m = fmt("sup relative gap %.4f at x=%.2f on [%.2f, %.2f] (tol 0.05)", gap, where, lo, hi);
    return gap <= 0.05;
}

bool spectral_negativity(const AcceptanceOptions& opt, std::string& m) {
    const Grid ho(-20.0, 20.0, 4001);
    std::vector<double> v(ho.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ho.x(i) * ho.x(i);
    const SpectrumReport hr = leading_eigenvalues_for_potential(ho, v, 3);
    double ho_err = 0.0;
    for (int j = 0; j < 3; ++j) ho_err = std::max(ho_err, std::abs(hr.eigenvalues[j] + (2.0 * j + 1.0)));
    bool ok = ho_err <= 1e-3;
    m = fmt("oscillator max err %.2e;", ho_err);
    const auto fronts = fronts_at({-10.0, -1.0, 0.0, 1.0, 10.0}, opt);
    for (const auto& [c, p] : fronts) {
        const SpectrumReport r = leading_eigenvalues(p, 1);
        const bool good = r.eigenvalues[0] < -1e-3 && r.ground_state_min >= -1e-8;
        ok = ok && good;
        m += fmt(" c=%g lambda0=%.5f%s;", c, r.eigenvalues[0], r.ground_state_min >= -1e-8 ? "" : " (sign change)");
    }
    return ok;
}

bool dynamic_stability(const AcceptanceOptions& opt, std::string& m) {
    const auto fronts = fronts_at({0.0, 1.0}, opt);
    bool ok = true;
    for (const auto& [c, p] : fronts) {
        const double lambda0 = leading_eigenvalues(p, 1).eigenvalues[0];
        FrontProfile init = p;
        const std::vector<double> b = bump(p.grid, front_position(p), 2.0);
        for (std::size_t i = 0; i < b.size(); ++i) init.u[i] += 1e-3 * b[i];
        EvolveConfig ec;
        ec.c = c;
        const EvolveResult er = evolve(init, ec, p.u);
        const double rel = std::abs(-er.measured_rate - std::abs(lambda0)) / std::abs(lambda0);
        ok = ok && rel <= 0.2;
        m += fmt("c=%g rate=%.5f |lambda0|=%.5f rel=%.4f; ", c, -er.measured_rate, std::abs(lambda0), rel);
    }
    m += "(tol 0.2)";
    return ok;
}

double alternative_guess(double x, double c) {
    const double x0 = c > 0.0 ? -0.25 * c * c : -1.0;
    return std::sqrt(0.5 * (std::hypot(x, 1.0) - x)) * 0.5 * (1.0 - std::tanh((x - x0) / 2.0));
}

// Ten decay lengths of the left boundary layer (rate 2|x|/|c| for c < 0),
// where the truncated closure and not the c-ordering sets the sign of the gap.
double left_layer(const FrontProfile& lo, const FrontProfile& hi) {
    if (lo.c >= 0.0) return 1.0;
    const double s = -std::max(lo.grid.x_min(), hi.grid.x_min());
    return std::max(1.0, 10.0 * -lo.c / (2.0 * s));
}

bool monotonicity(const AcceptanceOptions& opt, std::string& m) {
    const FrontProfile seed = seed_for(opt);
    const Branch down = branch_to(seed, -200.0, 5.0, opt);
    const Branch up = branch_to(seed, 12.0, 1.0, opt);
    const Branch b = merge_branches(down, up);
    int not_decreasing = 0, not_ordered = 0;
    double worst_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.points.size(); ++j) {
        const Admissibility a = admissibility(b.points[j].profile);
        if (!(a.nonincreasing && a.strictly_decreasing)) ++not_decreasing;
        if (j + 1 < b.points.size()) {
            const Ordering o = compare_ordering(b.points[j].profile, b.points[j + 1].profile,
                                                left_layer(b.points[j].profile, b.points[j + 1].profile));
            if (!o.ordered) ++not_ordered;
            worst_gap = std::min(worst_gap, o.min_gap);
        }
    }
    m = fmt("%zu profiles on [%g, %g]: %d not decreasing, %d adjacent pairs unordered (min gap %.2e);",
            b.points.size(), b.points.front().c, b.points.back().c, not_decreasing, not_ordered, worst_gap);
    bool ok = not_decreasing == 0 && not_ordered == 0 && !b.terminated_early;
    for (double c : {0.0, 3.0}) {
        const FrontProfile& a = at(c == 0.0 ? down : up, c);
        FrontProfile g = a;
        for (std::size_t i = 0; i < g.u.size(); ++i) g.u[i] = alternative_guess(g.grid.x(i), c);
        g.converged = false;
        const FrontProfile other = solve(g, BoundaryClosure{}).first;
        double diff = 0.0;
        for (std::size_t i = 0; i < a.u.size(); ++i) diff = std::max(diff, std::abs(a.u[i] - other.u[i]));
        ok = ok && diff <= 1e-8;
        m += fmt(" c=%g two-guess diff %.2e;", c, diff);
    }
    return ok;
}

bool crossing_uniqueness(const AcceptanceOptions& opt, std::string& m) {
    const Branch b = branch_to(seed_for(opt), 12.0, 1.0, opt);
    int bad = 0, checked = 0;
    double worst_c = 0.0;
    for (const BranchPoint& p : b.points) {
        if (p.c < 0.0) continue;
        ++checked;
        const auto cr = crossing_details(p.profile);
        const bool good = cr.size() == 1 && cr[0].transversal && cr[0].x < 0.0 && positive_side_clean(p.profile);
        if (!good) ++bad, worst_c = p.c;
    }
    m = fmt("%d branch points with c in [0, %g]: %d without a unique transversal crossing", checked, b.last_good_c, bad);
    if (bad) m += fmt(" (e.g. c=%g)", worst_c);
    return bad == 0 && checked > 0 && b.last_good_c == 12.0;
}

bool tail_asymptotics(const AcceptanceOptions& opt, std::string& m) {
    const auto fronts = fronts_at({0.0, 1.0}, opt);
    bool ok = true;
    for (const auto& [c, p] : fronts) {
        const TailFit f = fit_tail_coefficients(p);
        const double rel = std::abs(f.right_log_slope_fitted - f.right_log_slope_predicted) /
                           std::abs(f.right_log_slope_predicted);
        ok = ok && rel <= 0.05;
        m += fmt("c=%g log-slope %.5f vs %.5f rel %.2e on [%.2f, %.2f]; ", c, f.right_log_slope_fitted,
                 f.right_log_slope_predicted, rel, f.right_window_lo, f.right_window_hi);
    }
    const FrontProfile& p0 = fronts.at(0.0);
    const double s = 10.0;
    const double measured = p0.value_at(-s) - std::sqrt(s);
    const double predicted = -std::sqrt(s) / (8.0 * s * s * s);
    const double gap = std::abs(measured - predicted);
    ok = ok && gap <= 5e-4;
    m += fmt("u(-10)-sqrt(10) = %.4e vs %.4e, gap %.2e (tol 5e-4)", measured, predicted, gap);
    return ok;
}

bool inner_outer(const AcceptanceOptions& opt, std::string& m) {
    const double eps = 1e-3;
    const double e13 = std::cbrt(eps);
    std::vector<double> cs;
    for (int k = -4; k <= 4; ++k) cs.push_back(0.05 * k);
    std::vector<double> scaled;
    for (double c : cs) scaled.push_back(c / e13);
    const auto inner = fronts_at(scaled, opt);
    bool ok = true;
    double worst_interface = 0.0;
    for (double c : cs) {
        InnerScalingOptions io;
        io.h_inner = opt.h;
        io.evolve_cross_check = c == 0.0;
        const InnerScalingReport r = compare_inner_scaling(eps, c, inner.at(c / e13), io);
        worst_interface = std::max(worst_interface, r.interface_gap);
        if (c == 0.0) {
            ok = ok && r.sup_gap <= 0.05 * e13;
            m += fmt("c=0 sup gap %.3e (tol %.3e), evolution vs Newton %.1e; ", r.sup_gap, 0.05 * e13,
                     r.evolve_gap.value_or(-1.0));
        }
    }
    ok = ok && worst_interface <= 0.5;
    m += fmt("max interface gap %.4f over c in [%.2f, %.2f] (tol 0.5)", worst_interface, cs.front(), cs.back());
    return ok;
}

double fd_order(bool second, int upwind) {
    double err[2];
    for (int r = 0; r < 2; ++r) {
        const Grid g(-2.0, 2.0, r == 0 ? 41 : 81);
        std::vector<double> u(g.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = second ? std::sin(g.x(i)) : std::exp(g.x(i));
        const std::vector<double> d = second ? d2_apply(g, u) : d1_apply(g, u, upwind);
        err[r] = 0.0;
        for (std::size_t i = 1; i + 1 < u.size(); ++i) {
            const double exact = second ? -std::sin(g.x(i)) : std::exp(g.x(i));
            err[r] = std::max(err[r], std::abs(d[i] - exact));
        }
    }
    return std::log2(err[0] / err[1]);
}

bool hygiene(const AcceptanceOptions& opt, std::string& m) {
    bool ok = true;
    const double o2 = fd_order(true, 0);
    m = fmt("order d2 %.3f, d1 (-,0,+) ", o2);
    ok = ok && o2 >= 3.7 && o2 <= 4.3;
    for (int s : {-1, 0, 1}) {
        const double o = fd_order(false, s);
        ok = ok && o >= 3.7 && o <= 4.3;
        m += fmt("%.3f ", o);
    }
    m += "(h 0.1 -> 0.05);";

    const auto fronts = fronts_at({0.0, 5.0}, opt);
    {
        const FrontProfile& p = fronts.at(0.0);
        const BoundaryClosure bc;
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        const double len = p.grid.x_max() - p.grid.x_min();
        std::vector<double> v(p.u.size(), 0.0);
        for (int k = 1; k <= 5; ++k) {
            const double a = coef(rng);
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] += a * std::sin(k * std::numbers::pi * (p.grid.x(i) - p.grid.x_min()) / len);
            }
        }
        const double t = 1e-6;
        FrontProfile q = p;
        for (std::size_t i = 0; i < v.size(); ++i) q.u[i] += t * v[i];
        const std::vector<double> f0 = residual(p, bc), f1 = residual(q, bc);
        const std::vector<double> jv = jacobian(p, bc).apply(v);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            num = std::max(num, std::abs((f1[i] - f0[i]) / t - jv[i]));
            den = std::max(den, std::abs(jv[i]));
        }
        ok = ok && num / den <= 1e-5;
        m += fmt(" jacobian rel err %.2e;", num / den);
    }
    for (const auto& [c, p] : fronts) {
        const Domain d{p.grid.x_min(), p.grid.x_max()};
        FrontProfile g = reinterpolate(p, Grid::on_lattice(2.0 * d.x_min, 2.0 * d.x_max, opt.h));
        const FrontProfile q = solve(g, BoundaryClosure{}).first;
        const double diff = std::abs(p.value_at(0.0) - q.value_at(0.0));
        ok = ok && diff < 1e-6;
        m += fmt(" c=%g domain doubling du(0) %.2e;", c, diff);
    }
    return ok;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> s{
        {1, "large-negative-c amplitude law", 180.0, amplitude_law},
        {2, "front-delay law", 120.0, front_delay},
        {3, "reverse-quench law", 120.0, reverse_quench},
        {4, "closed-form agreement", 60.0, closed_form},
        {5, "spectral negativity", 120.0, spectral_negativity},
        {6, "dynamical stability and rate", 180.0, dynamic_stability},
        {7, "monotonicity suite", 120.0, monotonicity},
        {8, "crossing uniqueness", 30.0, crossing_uniqueness},
        {9, "tail asymptotics", 60.0, tail_asymptotics},
        {10, "inner/outer match", 240.0, inner_outer},
        {11, "numerical hygiene", 120.0, hygiene},
    };
    return s;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    const auto& all = entries();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Entry& s) { return s.id == id; });
    if (it == all.end()) throw std::invalid_argument(fmt("unknown acceptance criterion %d", id));
    CriterionResult r;
    r.id = id;
    r.name = it->name;
    r.budget_seconds = it->budget;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = it->body(opt, r.measured);
    } catch (const std::exception& e) {
        r.measured += std::string(" error: ") + e.what();
        ok = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = ok && r.seconds <= r.budget_seconds;
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    std::vector<CriterionResult> out;
    for (const Entry& s : entries()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), s.id) == opt.only.end()) continue;
        out.push_back(run_criterion(s.id, opt));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    return fmt("[%s] %d %s: %s (%.1f s / %.0f s)", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured.c_str(),
               r.seconds, r.budget_seconds);
}

}  // namespace hmfront
