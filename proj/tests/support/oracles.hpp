#pragma once

// Reference values computed by routes that share no code with the library.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-15) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

/// erf as (2/√π)∫₀ˣ e^{-t²} dt.
inline double erf_quadrature(double x) {
    const double s = integrate([](double t) { return std::exp(-t * t); }, 0.0, x);
    return 2.0 / std::sqrt(std::numbers::pi) * s;
}

/// Ai and Ai' from the Maclaurin series (long double), adequate for |x| <= 6.
inline std::array<double, 2> airy_ai(double xd) {
    const long double x = xd;
    const long double c1 = 0.355028053887817239260L, c2 = 0.258819403792806798405L;
    long double f = 0, g = 0, fp = 0, gp = 0;
    long double t = 1, s = x;          // terms of f and g
    long double tp = 0, sp = 1;        // their derivatives
    const long double x3 = x * x * x;
    for (int k = 0; k < 200; ++k) {
        f += t, g += s, fp += tp, gp += sp;
        const long double a = (3.0L * k + 2) * (3.0L * k + 3), b = (3.0L * k + 3) * (3.0L * k + 4);
        t *= x3 / a;
        s *= x3 / b;
        tp = x != 0 ? t * (3.0L * (k + 1)) / x : 0;
        sp = x != 0 ? s * (3.0L * (k + 1) + 1) / x : 0;
        if (std::abs(t) + std::abs(s) < 1e-30L * (std::abs(f) + std::abs(g) + 1)) break;
    }
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

/// First zero of Ai on the negative axis, by bisection on the series.
inline double airy_first_zero() {
    double lo = -3.0, hi = -2.0;  // Ai(-3) < 0 < Ai(-2)
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        (airy_ai(m)[0] < 0.0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

/// Hastings–McLeod solution of u'' = x u + u³ with u ~ √2 Ai(x) at +∞,
/// integrated leftward from x0 by classical RK4. Returns u at each x in xs
/// (xs descending, all <= x0).
inline std::vector<double> hastings_mcleod(const std::vector<double>& xs, double x0 = 5.0, double h = 1e-3) {
    const auto ai = airy_ai(x0);
    double x = x0, u = std::sqrt(2.0) * ai[0], v = std::sqrt(2.0) * ai[1];
    auto acc = [](double x, double u) { return x * u + u * u * u; };
    std::vector<double> out;
    for (double target : xs) {
        while (x - target > 1e-12) {
            const double dx = -std::min(h, x - target);
            const double k1u = v, k1v = acc(x, u);
            const double k2u = v + 0.5 * dx * k1v, k2v = acc(x + 0.5 * dx, u + 0.5 * dx * k1u);
            const double k3u = v + 0.5 * dx * k2v, k3v = acc(x + 0.5 * dx, u + 0.5 * dx * k2u);
            const double k4u = v + dx * k3v, k4v = acc(x + dx, u + dx * k3u);
            u += dx / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
            v += dx / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
            x += dx;
        }
        out.push_back(u);
    }
    return out;
}

/// Inverse of tridiag(-1, 2, -1) of order n, entry (i, j), 0-based.
inline double toeplitz_inverse(std::size_t n, std::size_t i, std::size_t j) {
    const double a = static_cast<double>(std::min(i, j) + 1), b = static_cast<double>(std::max(i, j) + 1);
    return a * (static_cast<double>(n) + 1.0 - b) / (static_cast<double>(n) + 1.0);
}

/// Eigenvalues of tridiag(1, -2, 1)/h² of order n, descending.
inline double toeplitz_eigenvalue(std::size_t n, double h, std::size_t j) {
    const double s = std::sin((static_cast<double>(j) + 1.0) * std::numbers::pi / (2.0 * (static_cast<double>(n) + 1.0)));
    return -4.0 / (h * h) * s * s;
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        }
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace oracle
