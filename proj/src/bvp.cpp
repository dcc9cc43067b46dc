#include "hmfront/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hmfront/asymptotics.hpp"

namespace hmfront {

Ramp Ramp::tanh(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("Ramp::tanh: epsilon must lie in (0, 1)");
    return Ramp{Kind::tanh, epsilon};
}

double Ramp::operator()(double x) const {
    return kind == Kind::linear ? x : std::tanh(epsilon * x);
}

double BoundaryClosure::left_value(double x_min, double c, const Ramp& ramp) const {
    if (kind == ClosureKind::dirichlet_zero) return 0.0;
    if (ramp.kind == Ramp::Kind::tanh) return std::sqrt(std::max(0.0, -ramp(x_min)));
    if (!(x_min < 0.0)) throw std::invalid_argument("BoundaryClosure: asymptotic closure needs x_min < 0");
    const double c_series = includes_drift_term ? c : 0.0;
    return std::sqrt(-x_min) * (1.0 + asymptotics::left_algebraic_correction(x_min, c_series, left_order));
}

double FrontProfile::value_at(double x) const {
    if (u.size() != grid.size() || u.empty()) throw std::invalid_argument("FrontProfile: values do not match grid");
    if (x <= grid.x_min()) return u.front();
    if (x >= grid.x_max()) return u.back();
    const double s = (x - grid.x_min()) / grid.h();
    const auto i = std::min(static_cast<std::size_t>(s), grid.size() - 2);
    const double t = s - static_cast<double>(i);
    return (1.0 - t) * u[i] + t * u[i + 1];
}

Domain default_domain(double c) {
    if (c >= 0.0) return {-std::max(25.0, 0.25 * c * c + 30.0), std::max(15.0, std::sqrt(c) + 15.0)};
    const double m = -c;
    return {-std::max(25.0, 4.0 * std::sqrt(m)), std::max({15.0, std::sqrt(m) + 15.0, std::sqrt(60.0 * m)})};
}

Grid default_grid(double c, double h) {
    const Domain d = default_domain(c);
    return Grid::on_lattice(d.x_min, d.x_max, h);
}

namespace {

void check_profile(const FrontProfile& p) {
    if (p.u.size() != p.grid.size()) throw std::invalid_argument("bvp: profile length does not match grid");
    for (double v : p.u) {
        if (!std::isfinite(v)) throw std::invalid_argument("bvp: non-finite value in profile");
    }
    if (!std::isfinite(p.c)) throw std::invalid_argument("bvp: non-finite drift c");
}

}  // namespace

std::vector<double> residual(const FrontProfile& p, const BoundaryClosure& bc) {
    check_profile(p);
    const Grid& g = p.grid;
    const std::size_t n = g.size();
    const int sign = upwind_sign_for(p.c);
    std::vector<double> f(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ui = p.u[i];
        const StencilRow r2 = d2_row(g, i);
        double acc = 0.0;
        for (std::size_t k = 0; k < r2.weights.size(); ++k) acc += r2.weights[k] * (p.u[r2.first + k] - ui);
        if (p.c != 0.0) {
            const StencilRow r1 = d1_row(g, i, sign);
            double d1 = 0.0;
            for (std::size_t k = 0; k < r1.weights.size(); ++k) d1 += r1.weights[k] * (p.u[r1.first + k] - ui);
            acc += p.c * d1;
        }
        // -μu - u³ grouped as -u(μ + u²): near u² = -μ the bracket is computed before scaling.
        f[i] = acc - ui * (p.ramp(g.x(i)) + ui * ui);
    }
    f[0] = p.u[0] - bc.left_value(g.x_min(), p.c, p.ramp);
    f[n - 1] = p.u[n - 1] - bc.right_value();
    return f;
}

BandedMatrix jacobian(const FrontProfile& p, const BoundaryClosure& /*bc*/) {
    check_profile(p);
    const Grid& g = p.grid;
    const std::size_t n = g.size();
    BandedMatrix j(n, BandedMatrix::kMaxBandwidth);
    add_d2(j, g);
    if (p.c != 0.0) add_d1(j, g, upwind_sign_for(p.c), p.c);
    for (std::size_t i = 1; i + 1 < n; ++i) j.at(i, i) -= p.ramp(g.x(i)) + 3.0 * p.u[i] * p.u[i];
    j.set_identity_row(0);
    j.set_identity_row(n - 1);
    return j;
}

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

// Least squares y ≈ a + b·t.
LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
    const double m = static_cast<double>(t.size());
    double st = 0, sy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
    }
    const double tm = st / m, ym = sy / m;
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        sty += (t[i] - tm) * (y[i] - ym);
    }
    const double b = stt > 0 ? sty / stt : 0.0;
    return {ym - b * tm, b};
}

std::size_t last_above(const FrontProfile& p, double level) {
    for (std::size_t i = p.u.size(); i-- > 0;) {
        if (p.u[i] > level) return i;
    }
    throw std::runtime_error("fit_tail_coefficients: profile never exceeds 0.1");
}

}  // namespace

TailFit fit_tail_coefficients(const FrontProfile& p) {
    check_profile(p);
    if (p.ramp.kind != Ramp::Kind::linear) throw std::invalid_argument("fit_tail_coefficients: linear ramp only");
    const Grid& g = p.grid;
    const double xf = g.x(last_above(p, 0.1));
    TailFit out;
    constexpr std::size_t kMinNodes = 8;

    // Right tail.
    {
        const double lo = std::max({xf + 2.0, std::max(0.0, -0.25 * p.c * p.c) + 1.0 + g.h()});
        const double hi = std::min(xf + 7.0, g.x_max() - 1.0);
        std::vector<double> xs, inv_x, r, lnu, shape;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            if (x < lo || x > hi || !(p.u[i] > 1e-300)) continue;
            xs.push_back(x);
            inv_x.push_back(1.0 / x);
            lnu.push_back(std::log(p.u[i]));
            shape.push_back(asymptotics::right_tail_log_shape(x, p.c));
            r.push_back(lnu.back() - shape.back());
        }
        if (xs.size() < kMinNodes) throw std::runtime_error("fit_tail_coefficients: right window has too few nodes");
        const LineFit fr = fit_line(inv_x, r);
        out.alpha_plus = std::exp(fr.intercept);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out.right_fit_residual = std::max(out.right_fit_residual, std::abs(r[i] - fr.intercept - fr.slope * inv_x[i]));
        }
        out.right_window_lo = xs.front();
        out.right_window_hi = xs.back();
        out.right_log_slope_fitted = fit_line(xs, lnu).slope;
        out.right_log_slope_predicted = fit_line(xs, shape).slope;
    }

    // Left tail.
    {
        const double lo = std::max(xf - 7.0, g.x_min() + 1.0);
        const double hi = std::min(xf - 2.0, -2.0);
        std::vector<double> xs, r, mode;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            if (x < lo || x > hi) continue;
            const double e = asymptotics::left_exponential_mode(x, p.c);
            if (!(e > 1e-300)) continue;
            xs.push_back(x);
            mode.push_back(e);
            r.push_back(p.u[i] / std::sqrt(-x) - 1.0 - asymptotics::left_algebraic_correction(x, p.c, 1));
        }
        if (xs.size() < kMinNodes) throw std::runtime_error("fit_tail_coefficients: left window has too few nodes");
        double num = 0, den = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += r[i] * mode[i];
            den += mode[i] * mode[i];
        }
        out.alpha_minus = num / den;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out.left_fit_residual = std::max(out.left_fit_residual, std::abs(r[i] - out.alpha_minus * mode[i]));
        }
        out.left_window_lo = xs.front();
        out.left_window_hi = xs.back();
    }
    return out;
}

}  // namespace hmfront
