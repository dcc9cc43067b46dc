#include "hmfront/specialfns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmfront::special {

namespace {

#ifdef __SIZEOF_FLOAT128__
using wide = __float128;
#else
using wide = long double;
#endif

constexpr double kSeriesSplit = 3.0;

// erf(x) = 2/√π · e^{-x²} · Σ 2ⁿ x^{2n+1} / (2n+1)!!, all terms positive.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return 2.0 * std::numbers::inv_sqrtpi * std::exp(-x2) * sum;
}

// Continued fraction erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated by the modified Lentz method. Returns e^{x²} erfc(x).
double erfcx_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < 5000; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    const double r = ax <= kSeriesSplit ? erf_series(ax) : 1.0 - erfc(ax);
    return x < 0.0 ? -r : r;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 1.0 + erf(-x);
    if (x <= kSeriesSplit) return 1.0 - erf_series(x);
    if (x > 27.3) return 0.0;  // below the smallest subnormal
    return std::exp(-x * x) * erfcx_continued_fraction(x);
}

double erfcx(double x) {
    if (x < 0.0) throw std::domain_error("erfcx: requires x >= 0");
    if (x <= kSeriesSplit) return std::exp(x * x) * (1.0 - erf_series(x));
    return erfcx_continued_fraction(x);
}

BesselValue bessel_j_third_series(ThirdOrder order, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("bessel_j_third: requires finite x > 0");
    }
    const double nu = order == ThirdOrder::plus ? 1.0 / 3.0 : -1.0 / 3.0;
    const double gamma_nu_plus_one = order == ThirdOrder::plus ? kGammaFourThirds : kGammaTwoThirds;

    // J_ν(x) = (x/2)^ν / Γ(ν+1) · Σ_k t_k,  t_k = t_{k-1} · (-x²/4) / (k (k+ν)).
    const wide q = -static_cast<wide>(x) * static_cast<wide>(x) / 4;
    const wide wnu = order == ThirdOrder::plus ? wide(1) / 3 : wide(-1) / 3;
    wide term = 1;
    wide sum = 1;
    int k = 1;
    wide next = 0;
    for (; k < 1000; ++k) {
        term *= q / (wide(k) * (wide(k) + wnu));
        sum += term;
        next = term * q / (wide(k + 1) * (wide(k + 1) + wnu));
        const wide abs_next = next < 0 ? -next : next;
        const wide abs_sum = sum < 0 ? -sum : sum;
        // Past k > x/2 the terms decrease monotonically, so the alternating
        // remainder is bounded by the first omitted term.
        if (wide(k) > wide(x) / 2 && abs_next < wide(1e-20) * abs_sum) break;
    }
    const double prefactor = std::pow(0.5 * x, nu) / gamma_nu_plus_one;
    BesselValue out;
    out.value = prefactor * static_cast<double>(sum);
    out.truncation_bound = std::abs(prefactor * static_cast<double>(next));
    out.terms = k + 1;
    return out;
}

double bessel_j_third(int sign, double x) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("bessel_j_third: sign must be +1 or -1");
    return bessel_j_third_series(sign > 0 ? ThirdOrder::plus : ThirdOrder::minus, x).value;
}

double bessel_combination(double z) {
    const double arg = 2.0 * std::pow(z, 1.5) / 3.0;
    return bessel_j_third(-1, arg) + bessel_j_third(1, arg);
}

Omega0Result omega0() {
    constexpr double step = 1e-3;
    constexpr double z_end = 10.0;
    double a = step;
    double fa = bessel_combination(a);
    double b = a;
    double fb = fa;
    bool found = false;
    for (int i = 2; i * step <= z_end + 1e-12; ++i) {
        b = i * step;
        fb = bessel_combination(b);
        if ((fa > 0.0) != (fb > 0.0)) {
            found = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!found) throw std::runtime_error("omega0: no sign change of the Bessel combination on (0, 10]");

    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = bessel_combination(m);
        if (fm == 0.0) {
            a = b = m;
            break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Omega0Result r;
    r.value = 0.5 * (a + b);
    r.residual = bessel_combination(r.value);
    // Widen by one ulp-scale margin so the root sits strictly inside.
    r.bracket = {std::nextafter(a, 0.0), std::nextafter(b, 20.0)};
    return r;
}

double front_delay_constant() {
    static const double value = omega0().value * std::pow(15.0 / 16.0, 2.0 / 3.0);
    return value;
}

}  // namespace hmfront::special
