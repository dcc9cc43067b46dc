#include "hmfront/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmfront {

LevelCrossing front_position_detail(const FrontProfile& p, double delta) {
    const auto& u = p.u;
    if (u.size() != p.grid.size() || u.size() < 2) throw std::invalid_argument("front_position: malformed profile");
    const double umax = *std::max_element(u.begin(), u.end());
    if (!(delta > 0.0 && delta < umax)) throw std::domain_error("front_position: delta outside (0, max u)");
    std::size_t i = u.size() - 1;
    while (i > 0 && !(u[i - 1] > delta)) --i;
    // u[i-1] > delta >= u[i]
    const std::size_t k = i - 1;
    const double h = p.grid.h();
    const double du = u[k + 1] - u[k];
    const double t = (u[k] - delta) / (u[k] - u[k + 1]);
    LevelCrossing out{p.grid.x(k) + t * h, 0.0, k};
    double upp = 0.0;
    for (std::size_t j : {k, k + 1}) {
        if (j >= 1 && j + 1 < u.size()) upp = std::max(upp, std::abs(u[j + 1] - 2.0 * u[j] + u[j - 1]) / (h * h));
    }
    const double up = std::abs(du) / h;
    out.error_bound = up > 0.0 ? h * h * upp / (8.0 * up) : std::numeric_limits<double>::infinity();
    return out;
}

double front_position(const FrontProfile& p, double delta) { return front_position_detail(p, delta).x; }

namespace {

struct Cubic {
    std::array<double, 4> x{};
    std::array<double, 4> y{};

    double operator()(double t) const {
        double s = 0.0;
        for (int a = 0; a < 4; ++a) {
            double l = 1.0;
            for (int b = 0; b < 4; ++b) {
                if (b != a) l *= (t - x[b]) / (x[a] - x[b]);
            }
            s += y[a] * l;
        }
        return s;
    }

    double derivative(double t) const {
        double s = 0.0;
        for (int a = 0; a < 4; ++a) {
            double dl = 0.0;
            for (int m = 0; m < 4; ++m) {
                if (m == a) continue;
                double term = 1.0 / (x[a] - x[m]);
                for (int b = 0; b < 4; ++b) {
                    if (b != a && b != m) term *= (t - x[b]) / (x[a] - x[b]);
                }
                dl += term;
            }
            s += y[a] * dl;
        }
        return s;
    }
};

}  // namespace

std::vector<Crossing> crossing_details(const FrontProfile& p) {
    const Grid& g = p.grid;
    const std::size_t n = g.size();
    if (p.u.size() != n) throw std::invalid_argument("crossings: malformed profile");
    auto q = [&](std::size_t i) { return g.x(i) + p.u[i] * p.u[i]; };
    std::vector<Crossing> out;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(g.x(i) < 0.0)) break;
        const double qa = q(i), qb = q(i + 1);
        if (qa == 0.0) {
            out.push_back({g.x(i), 0.0, false});
            continue;
        }
        if (qb == 0.0 || (qa < 0.0) == (qb < 0.0)) continue;
        const std::size_t first = std::min(i >= 1 ? i - 1 : 0, n - 4);
        Cubic cub;
        for (int a = 0; a < 4; ++a) {
            cub.x[a] = g.x(first + a);
            cub.y[a] = q(first + a);
        }
        double lo = g.x(i), hi = g.x(i + 1);
        double flo = qa;
        for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = cub(mid);
            if ((fm < 0.0) == (flo < 0.0) && fm != 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double root = 0.5 * (lo + hi);
        if (!(root < 0.0)) continue;
        const double slope = cub.derivative(root);
        out.push_back({root, slope, std::abs(slope) > 1e-6});
    }
    return out;
}

std::vector<double> crossings(const FrontProfile& p) {
    std::vector<double> xs;
    for (const Crossing& c : crossing_details(p)) xs.push_back(c.x);
    return xs;
}

bool positive_side_clean(const FrontProfile& p) {
    for (std::size_t i = 0; i < p.u.size(); ++i) {
        const double x = p.grid.x(i), u = p.u[i];
        if (x > 0.0 && u > 0.0 && !(x * u + u * u * u > 0.0)) return false;
    }
    return true;
}

Admissibility admissibility(const FrontProfile& p) {
    Admissibility a;
    const Grid& g = p.grid;
    const std::size_t n = g.size();
    if (p.u.size() != n || n < Grid::kMinNodes) {
        a.violation = "malformed profile";
        return a;
    }
    auto flag = [&](double x, const char* what) {
        if (!a.violation_x) {
            a.violation_x = x;
            a.violation = what;
        }
    };

    a.positive = true;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(p.u[i] > 0.0)) {
            a.positive = false;
            flag(g.x(i), "non-positive value");
            break;
        }
    }

    a.nonincreasing = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (p.u[i + 1] > p.u[i]) {
            a.nonincreasing = false;
            flag(g.x(i), "increase between neighbouring nodes");
            break;
        }
    }

    const double umax = *std::max_element(p.u.begin(), p.u.end());
    const std::vector<double> du = d1_apply(g, p.u, 0);
    a.max_slope_interface = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (umax > 0.0 && p.u[i] >= 1e-6 * umax) a.max_slope_interface = std::max(a.max_slope_interface, du[i]);
    }
    a.strictly_decreasing = umax > 0.0 && a.max_slope_interface < -1e-12;
    if (!a.strictly_decreasing && umax > 0.0) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (p.u[i] >= 1e-6 * umax && !(du[i] < -1e-12)) {
                flag(g.x(i), "slope not negative on the interface region");
                break;
            }
        }
    }

    const double xm = g.x_min();
    double ref = 0.0;
    if (p.ramp.kind == Ramp::Kind::linear) {
        if (xm < 0.0) {
            ref = std::sqrt(-xm);
            const double s = -xm;
            a.left_tolerance = 2.0 * std::max(std::abs(p.c) / (2.0 * std::sqrt(2.0) * s * s), 1.0 / (8.0 * s * s * s));
        }
    } else if (p.ramp(xm) < 0.0) {
        ref = std::sqrt(-p.ramp(xm));
        a.left_tolerance = 1e-8;
    }
    a.left_gap = ref > 0.0 ? std::abs(p.u.front() - ref) / ref : std::numeric_limits<double>::infinity();
    a.left_limit = ref > 0.0 && a.left_gap <= a.left_tolerance;
    if (!a.left_limit) flag(xm, "left limit not matched");

    for (std::size_t i = 0; i < n; ++i) {
        if (g.x(i) >= g.x_max() - 1.0) a.right_max = std::max(a.right_max, std::abs(p.u[i]));
    }
    a.right_limit = a.right_max < 1e-8;
    if (!a.right_limit) flag(g.x_max(), "right limit not zero");
    return a;
}

FrontDiagnostics diagnose(const FrontProfile& p, double delta) {
    FrontDiagnostics d;
    d.delta = delta;
    const LevelCrossing lc = front_position_detail(p, delta);
    d.x_delta = lc.x;
    d.x_delta_error_bound = lc.error_bound;
    d.crossing_points = crossings(p);
    const Admissibility a = admissibility(p);
    d.monotone_x = a.nonincreasing && a.strictly_decreasing;
    const std::vector<double> du = d1_apply(p.grid, p.u, 0);
    d.min_slope_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < du.size(); ++i) d.min_slope_gap = std::max(d.min_slope_gap, du[i]);
    d.u_at_zero = (p.grid.x_min() <= 0.0 && p.grid.x_max() >= 0.0) ? p.value_at(0.0)
                                                                      : std::numeric_limits<double>::quiet_NaN();
    return d;
}

}  // namespace hmfront
