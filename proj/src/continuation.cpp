#include "hmfront/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmfront/asymptotics.hpp"
#include "hmfront/diagnostics.hpp"

namespace hmfront {

namespace {

double left_extension(const FrontProfile& p, double x) {
    if (p.ramp.kind == Ramp::Kind::tanh) return std::sqrt(std::max(0.0, -p.ramp(x)));
    if (!(x < 0.0)) return 0.0;
    return std::sqrt(-x) * (1.0 + asymptotics::left_algebraic_correction(x, p.c, 1));
}

double cubic_at(const FrontProfile& p, double xs) {
    const Grid& g = p.grid;
    const double s = (xs - g.x_min()) / g.h();
    const auto n = static_cast<std::ptrdiff_t>(g.size());
    auto i = static_cast<std::ptrdiff_t>(std::floor(s));
    i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
    const std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
    double v = 0.0;
    for (int a = 0; a < 4; ++a) {
        const double ta = static_cast<double>(first + a);
        double l = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (b == a) continue;
            const double tb = static_cast<double>(first + b);
            l *= (s - tb) / (ta - tb);
        }
        v += l * p.u[static_cast<std::size_t>(first + a)];
    }
    return v;
}

}  // namespace

FrontProfile reinterpolate_shifted(const FrontProfile& p, const Grid& g_new, double shift) {
    if (p.u.size() != p.grid.size() || p.u.size() < 4) throw std::invalid_argument("reinterpolate: malformed profile");
    const double lo = p.grid.x_min() + shift, hi = p.grid.x_max() + shift;
    if (!(g_new.x_max() > lo && g_new.x_min() < hi)) throw std::invalid_argument("reinterpolate: grids do not overlap");
    FrontProfile out = p;
    out.grid = g_new;
    out.u.assign(g_new.size(), 0.0);
    out.converged = false;
    out.residual_norm = 0.0;
    out.alpha_plus.reset();
    out.alpha_minus.reset();

    std::optional<std::ptrdiff_t> offset;
    if (shift == 0.0) offset = g_new.node_offset_in(p.grid);
    const auto n_old = static_cast<std::ptrdiff_t>(p.grid.size());
    for (std::size_t i = 0; i < g_new.size(); ++i) {
        const double x = g_new.x(i);
        double v;
        if (offset) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + *offset;
            if (j >= 0 && j < n_old) {
                out.u[i] = p.u[static_cast<std::size_t>(j)];
                continue;
            }
        }
        if (x < lo) {
            v = left_extension(p, x);
        } else if (x > hi) {
            v = 0.0;
        } else {
            v = cubic_at(p, x - shift);
        }
        if (!std::isfinite(v)) throw std::runtime_error("reinterpolate: non-finite value");
        out.u[i] = std::max(v, 0.0);
    }
    return out;
}

FrontProfile reinterpolate(const FrontProfile& p, const Grid& g_new) {
    if (g_new == p.grid) {
        FrontProfile out = p;
        return out;
    }
    return reinterpolate_shifted(p, g_new, 0.0);
}

Grid continuation_grid(const Grid& current, double c_new, double lookahead, double h) {
    const Domain need = default_domain(c_new);
    const bool same_h = std::abs(current.h() - h) <= 1e-12 * h;
    if (same_h && current.x_min() <= need.x_min + 1e-9 && current.x_max() >= need.x_max - 1e-9) return current;
    const Domain ahead = default_domain(c_new + lookahead);
    const double x_min = std::min({need.x_min, ahead.x_min, same_h ? current.x_min() : need.x_min});
    const double x_max = std::max({need.x_max, ahead.x_max, same_h ? current.x_max() : need.x_max});
    return Grid::on_lattice(x_min, x_max, h);
}

Branch continue_branch(const FrontProfile& seed, double c_target, double dc_init, const SolverConfig& cfg,
                       const ContinuationConfig& cc) {
    if (!seed.converged) throw std::invalid_argument("continue_branch: seed is not converged");
    if (!std::isfinite(c_target)) throw std::invalid_argument("continue_branch: non-finite target");
    if (!(cc.dc_min > 0.0 && cc.dc_max >= cc.dc_min)) throw std::invalid_argument("continue_branch: bad step limits");
    cfg.validate();

    Branch br;
    br.direction = c_target >= seed.c ? Branch::Direction::increasing_c : Branch::Direction::decreasing_c;
    SolveReport seed_report;
    seed_report.converged = true;
    seed_report.final_residual = seed.residual_norm;
    seed_report.residual_history = {seed.residual_norm};
    br.points.push_back({seed.c, seed, seed_report});
    br.last_good_c = seed.c;
    const double dir = c_target >= seed.c ? 1.0 : -1.0;
    double dc = std::clamp(std::abs(dc_init), cc.dc_min, cc.dc_max);
    int successes = 0;

    // Interface positions of the last two accepted points, for the secant shift.
    std::vector<std::pair<double, double>> fronts;
    try {
        fronts.emplace_back(seed.c, front_position(seed, cc.delta));
    } catch (const std::domain_error&) {
    }

    while (br.last_good_c != c_target) {
        const FrontProfile& prev = br.points.back().profile;
        const double c_prev = br.last_good_c;
        const double step = std::min(dc, std::abs(c_target - c_prev));
        const double c_new = std::abs(c_target - c_prev) <= step ? c_target : c_prev + dir * step;

        const Grid g = continuation_grid(prev.grid, c_new, dir * 4.0 * step, cc.h);
        double shift = 0.0;
        if (cc.predictor == Predictor::translated && fronts.size() >= 2) {
            const auto& [c1, x1] = fronts[fronts.size() - 2];
            const auto& [c2, x2] = fronts.back();
            if (c2 != c1) shift = (x2 - x1) / (c2 - c1) * (c_new - c2);
        }
        FrontProfile guess = shift == 0.0 ? reinterpolate(prev, g) : reinterpolate_shifted(prev, g, shift);
        guess.c = c_new;

        std::string failure;
        try {
            auto [sol, rep] = solve(guess, cc.closure, cfg);
            const Admissibility adm = admissibility(sol);
            if (adm.admissible()) {
                br.points.push_back({c_new, std::move(sol), std::move(rep)});
                br.last_good_c = c_new;
                try {
                    fronts.emplace_back(c_new, front_position(br.points.back().profile, cc.delta));
                } catch (const std::domain_error&) {
                    fronts.clear();
                }
                if (++successes >= cc.successes_to_grow) {
                    dc = std::min(dc * cc.grow, cc.dc_max);
                    successes = 0;
                }
                continue;
            }
            failure = "inadmissible: " + adm.violation;
        } catch (const SolverError& e) {
            failure = std::string(to_string(e.kind())) + ": " + e.what();
        }
        br.failures.emplace_back(c_new, failure);
        successes = 0;
        dc *= 0.5;
        if (dc < cc.dc_min) {
            br.terminated_early = true;
            break;
        }
    }
    std::sort(br.points.begin(), br.points.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.c < b.c; });
    return br;
}

Branch continue_through(const FrontProfile& seed, const std::vector<double>& waypoints, double dc_init,
                        const SolverConfig& cfg, const ContinuationConfig& cc) {
    Branch out;
    out.direction = waypoints.empty() || waypoints.back() >= seed.c ? Branch::Direction::increasing_c
                                                                    : Branch::Direction::decreasing_c;
    SolveReport seed_report;
    seed_report.converged = true;
    seed_report.final_residual = seed.residual_norm;
    out.points.push_back({seed.c, seed, seed_report});
    out.last_good_c = seed.c;
    const FrontProfile* from = &seed;
    double dc = dc_init;
    for (double target : waypoints) {
        Branch seg = continue_branch(*from, target, dc, cfg, cc);
        const double from_c = from->c;
        out.failures.insert(out.failures.end(), seg.failures.begin(), seg.failures.end());
        for (BranchPoint& bp : seg.points) {
            if (bp.c != from_c) out.points.push_back(std::move(bp));
        }
        out.last_good_c = seg.last_good_c;
        if (seg.terminated_early) {
            out.terminated_early = true;
            break;
        }
        const auto it = std::find_if(out.points.begin(), out.points.end(), [&](const BranchPoint& b) { return b.c == target; });
        from = &it->profile;
    }
    std::sort(out.points.begin(), out.points.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.c < b.c; });
    return out;
}

std::vector<double> waypoints_between(double from, double to, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("waypoints_between: spacing must be positive");
    const auto k = static_cast<int>(std::ceil(std::abs(to - from) / spacing - 1e-9));
    std::vector<double> w;
    for (int i = 1; i <= k; ++i) w.push_back(i == k ? to : from + (to - from) * i / k);
    return w;
}

double ramp_guess(double x) { return std::sqrt(0.5 * (std::hypot(x, 1.0) - x)) * 0.5 * (1.0 - std::tanh(x)); }

FrontProfile hastings_mcleod_seed(const SolverConfig& cfg, double h, const BoundaryClosure& closure) {
    FrontProfile p;
    p.c = 0.0;
    p.grid = default_grid(0.0, h);
    p.u.resize(p.grid.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) p.u[i] = ramp_guess(p.grid.x(i));
    return solve(p, closure, cfg).first;
}

FrontProfile front_at(double c, const SolverConfig& cfg, const ContinuationConfig& cc) {
    FrontProfile seed = hastings_mcleod_seed(cfg, cc.h, cc.closure);
    if (c == 0.0) return seed;
    Branch br = continue_branch(seed, c, 0.5, cfg, cc);
    if (br.last_good_c != c) {
        throw SolverError(SolverError::Kind::max_iter,
                          "continuation stopped at c = " + std::to_string(br.last_good_c) + " before reaching " +
                              std::to_string(c));
    }
    const auto it = std::find_if(br.points.begin(), br.points.end(), [&](const BranchPoint& b) { return b.c == c; });
    return it->profile;
}

Branch merge_branches(const Branch& down, const Branch& up) {
    Branch out;
    out.direction = Branch::Direction::increasing_c;
    out.points = down.points;
    for (const BranchPoint& bp : up.points) {
        const bool dup = std::any_of(out.points.begin(), out.points.end(), [&](const BranchPoint& q) { return q.c == bp.c; });
        if (!dup) out.points.push_back(bp);
    }
    std::sort(out.points.begin(), out.points.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.c < b.c; });
    out.failures = down.failures;
    out.failures.insert(out.failures.end(), up.failures.begin(), up.failures.end());
    out.terminated_early = down.terminated_early || up.terminated_early;
    out.last_good_c = up.last_good_c;
    return out;
}

Ordering compare_ordering(const FrontProfile& lo, const FrontProfile& hi, double shrink) {
    Ordering o;
    o.window_lo = std::max(lo.grid.x_min(), hi.grid.x_min()) + shrink;
    o.window_hi = std::min(lo.grid.x_max(), hi.grid.x_max()) - shrink;
    o.min_gap = std::numeric_limits<double>::infinity();
    if (!(o.window_hi > o.window_lo)) return o;
    const auto offset = lo.grid.node_offset_in(hi.grid);  // x_lo(i) == x_hi(i + offset)
    bool ok = true;
    for (std::size_t i = 0; i < lo.grid.size(); ++i) {
        const double x = lo.grid.x(i);
        if (x < o.window_lo || x > o.window_hi) continue;
        const double a = lo.u[i];
        double b;
        if (offset) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + *offset;
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(hi.u.size())) continue;
            b = hi.u[static_cast<std::size_t>(j)];
        } else {
            b = hi.value_at(x);
        }
        if (std::max(a, b) < 1e-290) continue;
        ++o.compared;
        if (a - b < o.min_gap) {
            o.min_gap = a - b;
            o.worst_x = x;
        }
        if (!(a > b)) ok = false;
    }
    o.ordered = ok && o.compared > 0;
    return o;
}

}  // namespace hmfront
