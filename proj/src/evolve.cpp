#include "hmfront/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hmfront/diagnostics.hpp"

namespace hmfront {

void EvolveConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("EvolveConfig: dt must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("EvolveConfig: t_end must be non-negative");
    if (record_every < 1) throw std::invalid_argument("EvolveConfig: record_every must be at least 1");
    if (ramp.kind == Ramp::Kind::tanh && !(ramp.epsilon > 0.0 && ramp.epsilon < 1.0)) {
        throw std::invalid_argument("EvolveConfig: tanh epsilon must lie in (0, 1)");
    }
}

Stepper::Stepper(const Grid& g, const EvolveConfig& cfg, const std::vector<double>& stabilizer)
    : grid_(g), cfg_(cfg), lin_(g.size(), BandedMatrix::kMaxBandwidth) {
    cfg_.validate();
    const std::size_t n = g.size();
    if (stabilizer.size() != n) throw std::invalid_argument("Stepper: stabilizer length mismatch");
    s_.assign(n, 0.0);
    if (cfg_.include_cubic) {
        for (std::size_t i = 1; i + 1 < n; ++i) s_[i] = 3.0 * stabilizer[i] * stabilizer[i];
    }
    add_d2(lin_, g);
    if (cfg_.c != 0.0) add_d1(lin_, g, upwind_sign_for(cfg_.c), cfg_.c);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double mu = cfg_.include_ramp ? cfg_.ramp(g.x(i)) : 0.0;
        lin_.at(i, i) -= mu + s_[i];
    }

    const double theta = cfg_.scheme == Scheme::imex_cn ? 0.5 : 1.0;
    BandedMatrix m = lin_;
    const std::size_t bw = m.bandwidth();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i >= bw ? i - bw : 0;
        const std::size_t j1 = std::min(n - 1, i + bw);
        for (std::size_t j = j0; j <= j1; ++j) m.at(i, j) *= -theta * cfg_.dt;
        m.at(i, i) += 1.0;
    }
    lu_.emplace(m);
}

std::vector<double> Stepper::explicit_part(const std::vector<double>& u) const {
    std::vector<double> f(u.size(), 0.0);
    if (!cfg_.include_cubic) return f;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) f[i] = -u[i] * u[i] * u[i] + s_[i] * u[i];
    return f;
}

std::vector<double> Stepper::step(const std::vector<double>& u) {
    if (u.size() != grid_.size()) throw std::invalid_argument("Stepper::step: length mismatch");
    const double dt = cfg_.dt;
    std::vector<double> nl = explicit_part(u);
    std::vector<double> rhs = u;
    if (cfg_.scheme == Scheme::imex_euler) {
        for (std::size_t i = 0; i < u.size(); ++i) rhs[i] += dt * nl[i];
    } else {
        const std::vector<double> lu = lin_.apply(u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double ab = previous_explicit_ ? 1.5 * nl[i] - 0.5 * (*previous_explicit_)[i] : nl[i];
            rhs[i] += 0.5 * dt * lu[i] + dt * ab;
        }
        previous_explicit_ = std::move(nl);
    }
    std::vector<double> next = lu_->solve(rhs);
    // Pivoting leaks roundoff into the identity rows; hold the boundary values exactly.
    next.front() = u.front();
    next.back() = u.back();
    ++steps_;
    for (double v : next) {
        if (!std::isfinite(v)) throw EvolveError("evolve: non-finite state at step " + std::to_string(steps_), steps_);
    }
    return next;
}

std::vector<double> step(const std::vector<double>& u, const Grid& g, const EvolveConfig& cfg) {
    Stepper s(g, cfg, u);
    return s.step(u);
}

namespace {

double log_slope(const std::vector<std::pair<double, double>>& pts) {
    double st = 0, sy = 0;
    for (const auto& [t, d] : pts) {
        st += t;
        sy += std::log(d);
    }
    const double m = static_cast<double>(pts.size());
    const double tm = st / m, ym = sy / m;
    double stt = 0, sty = 0;
    for (const auto& [t, d] : pts) {
        stt += (t - tm) * (t - tm);
        sty += (t - tm) * (std::log(d) - ym);
    }
    return stt > 0.0 ? sty / stt : 0.0;
}

}  // namespace

EvolveResult evolve(const FrontProfile& initial, const EvolveConfig& cfg,
                    const std::optional<std::vector<double>>& reference) {
    cfg.validate();
    if (initial.u.size() != initial.grid.size()) throw std::invalid_argument("evolve: malformed profile");
    if (reference && reference->size() != initial.u.size()) throw std::invalid_argument("evolve: reference length mismatch");

    Stepper stepper(initial.grid, cfg, reference ? *reference : initial.u);
    std::vector<double> u = initial.u;
    EvolveResult res;
    const auto nsteps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));

    auto deviation = [&](const std::vector<double>& now, const std::vector<double>& before) {
        double d = 0.0;
        if (reference) {
            for (std::size_t i = 0; i < now.size(); ++i) d = std::max(d, std::abs(now[i] - (*reference)[i]));
        } else {
            for (std::size_t i = 0; i < now.size(); ++i) d = std::max(d, std::abs(now[i] - before[i]) / cfg.dt);
        }
        return d;
    };
    if (reference) res.deviation_history.emplace_back(0.0, deviation(u, u));

    for (long k = 1; k <= nsteps; ++k) {
        std::vector<double> next = stepper.step(u);
        if (k % cfg.record_every == 0 || k == nsteps) {
            res.deviation_history.emplace_back(static_cast<double>(k) * cfg.dt, deviation(next, u));
        }
        u = std::move(next);
    }
    res.steps = nsteps;

    double dmax = 0.0;
    for (const auto& [t, d] : res.deviation_history) dmax = std::max(dmax, d);
    std::vector<std::pair<double, double>> window;
    for (const auto& [t, d] : res.deviation_history) {
        if (d >= 1e-11 && d <= 1e-4 * dmax) window.emplace_back(t, d);
    }
    if (window.size() < 5) {
        window.clear();
        const std::size_t half = res.deviation_history.size() / 2;
        for (std::size_t i = half; i < res.deviation_history.size(); ++i) {
            if (res.deviation_history[i].second > 1e-12) window.push_back(res.deviation_history[i]);
        }
    }
    if (window.size() >= 2) {
        res.measured_rate = log_slope(window);
        res.fit_t_lo = window.front().first;
        res.fit_t_hi = window.back().first;
    }

    res.final = initial;
    res.final.u = std::move(u);
    res.final.converged = false;
    res.final.residual_norm = 0.0;
    return res;
}

std::vector<double> bump(const Grid& g, double x0, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("bump: width must be positive");
    std::vector<double> b(g.size(), 0.0);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double z = (g.x(i) - x0) / w;
        if (std::abs(z) < 1.0) b[i] = std::pow(std::cos(0.5 * std::numbers::pi * z), 2);
    }
    return b;
}

InnerScalingReport compare_inner_scaling(double eps, double c, const FrontProfile& inner,
                                         const InnerScalingOptions& opt) {
    if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("compare_inner_scaling: eps must lie in (0, 0.1]");
    if (!inner.converged || inner.ramp.kind != Ramp::Kind::linear) {
        throw std::invalid_argument("compare_inner_scaling: inner front must be a converged linear-ramp profile");
    }
    const double e13 = std::cbrt(eps);
    InnerScalingReport rep;
    rep.eps = eps;
    rep.c = c;
    rep.c_scaled = c / e13;
    if (std::abs(inner.c - rep.c_scaled) > 1e-9 * std::max(1.0, std::abs(rep.c_scaled))) {
        throw std::invalid_argument("compare_inner_scaling: inner front is not at eps^{-1/3} c");
    }
    rep.inner_front = inner;

    const Ramp ramp = Ramp::tanh(eps);
    const double h = opt.h_inner / e13;
    const Grid g = Grid::on_lattice(-3.0 / eps, inner.grid.x_max() / e13, h);

    FrontProfile guess;
    guess.c = c;
    guess.ramp = ramp;
    guess.grid = g;
    guess.u.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        const double xt = e13 * x;
        double v;
        if (xt < inner.grid.x_min()) {
            v = std::sqrt(std::max(0.0, -ramp(x)));
        } else {
            v = e13 * inner.value_at(xt);
            if (x < 0.0) v *= std::sqrt(std::tanh(-eps * x) / (-eps * x));
        }
        guess.u[i] = v;
    }
    guess.u.back() = 0.0;

    BoundaryClosure bc;
    auto [front, report] = solve(guess, bc, opt.solver);
    rep.tanh_front = std::move(front);
    rep.tanh_report = std::move(report);

    const double window = opt.window > 0.0 ? opt.window : 1.0 / e13;
    rep.sup_gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        if (std::abs(x) > window + 1e-9) continue;
        const double ut = rep.tanh_front.u[i];
        const double ui = e13 * inner.value_at(e13 * x);
        rep.rows.push_back({x, ut, ui, ut - ui});
        rep.sup_gap = std::max(rep.sup_gap, std::abs(ut - ui));
    }
    rep.x_delta_tanh = front_position(rep.tanh_front, e13 * opt.delta);
    rep.x_delta_inner_scaled = front_position(inner, opt.delta) / e13;
    rep.interface_gap = std::abs(rep.x_delta_tanh - rep.x_delta_inner_scaled);

    if (opt.evolve_cross_check) {
        EvolveConfig ec;
        ec.ramp = ramp;
        ec.c = c;
        ec.dt = opt.evolve_dt;
        ec.t_end = opt.evolve_t_end;
        ec.scheme = Scheme::imex_euler;
        ec.record_every = std::max(1, static_cast<int>(std::llround(10.0 / opt.evolve_dt)));
        guess.u.front() = rep.tanh_front.u.front();
        const EvolveResult er = evolve(guess, ec);
        double gap = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) gap = std::max(gap, std::abs(er.final.u[i] - rep.tanh_front.u[i]));
        rep.evolve_gap = gap;
    }
    return rep;
}

}  // namespace hmfront
