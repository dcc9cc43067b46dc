#include "hmfront/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hmfront/specialfns.hpp"

namespace hmfront::asymptotics {

namespace {

const double kPiQuarterRoot = std::pow(std::numbers::pi, 0.25);

void require_negative(double c, const char* what) {
    if (!(c < 0.0)) throw std::domain_error(std::string(what) + ": requires c < 0");
}

}  // namespace

double erf_profile(double x, double c) {
    require_negative(c, "erf_profile");
    const double root = std::sqrt(-c);
    const double amplitude = std::pow(-c, 0.25) / kPiQuarterRoot;
    const double z = x / root;
    if (z >= 0.0) {
        // erf(z) + 1 is in [1, 2]; the Gaussian carries the decay.
        return amplitude * std::exp(x * x / (2.0 * c)) / std::sqrt(special::erf(z) + 1.0);
    }
    // erf(z) + 1 = erfc(-z) = e^{-z²} erfcx(-z) and x²/(2c) = -z²/2, so the
    // Gaussians cancel exactly.
    return amplitude / std::sqrt(special::erfcx(-z));
}

double u_at_zero_negc(double c) {
    require_negative(c, "u_at_zero_negc");
    return std::pow(-c, 0.25) / kPiQuarterRoot;
}

double front_loc_largec(double c) {
    if (!(c > 0.0)) throw std::domain_error("front_loc_largec: requires c > 0");
    return -0.25 * c * c - special::front_delay_constant();
}

double front_loc_negc(double c) {
    require_negative(c, "front_loc_negc");
    return std::sqrt(-c);
}

double right_tail_log_shape(double x, double c) {
    const double shifted = x + 0.25 * c * c;
    if (!(x > 0.0) || !(shifted > 0.0)) throw std::domain_error("right_tail: requires x > max(0, -c²/4)");
    return -(2.0 / 3.0) * std::pow(shifted, 1.5) - 0.5 * c * x - 0.25 * std::log(x);
}

double right_tail(double x, double c, double alpha_plus) {
    if (!(x > std::max(0.0, -0.25 * c * c) + 1.0)) {
        throw std::domain_error("right_tail: requires x > max(0, -c²/4) + 1");
    }
    return alpha_plus * std::exp(right_tail_log_shape(x, c));
}

double right_tail_log_slope(double x, double c) {
    const double shifted = x + 0.25 * c * c;
    if (!(x > 0.0) || !(shifted > 0.0)) throw std::domain_error("right_tail_log_slope: requires x > max(0, -c²/4)");
    return -std::sqrt(shifted) - 0.5 * c - 0.25 / x;
}

double left_algebraic_correction(double x, double c, int order) {
    if (!(x < 0.0)) throw std::domain_error("left_algebraic_correction: requires x < 0");
    if (order < 0 || order > 2) throw std::invalid_argument("left_algebraic_correction: order must be 0, 1 or 2");
    if (order == 0) return 0.0;
    const double r = 1.0 / (-x);
    const double r2 = r * r;
    const double r3 = r2 * r;
    double a = -0.25 * c * r2 - 0.125 * r3;
    if (order >= 2) {
        const double r4 = r2 * r2;
        a += -9.0 / 32.0 * c * c * r4 - 23.0 / 32.0 * c * r4 * r - (89.0 * c * c * c + 73.0) / 128.0 * r3 * r3;
    }
    return a;
}

double left_exponential_mode(double x, double c) {
    if (!(x < 0.0)) throw std::domain_error("left_exponential_mode: requires x < 0");
    const double s = -x;
    const double base = -(2.0 * std::numbers::sqrt2 / 3.0) * std::pow(s, 1.5);
    if (c == 0.0) return std::exp(base) / std::pow(s, 0.75);
    return std::exp(base - 0.5 * c * x - c * c / (4.0 * std::numbers::sqrt2) * std::sqrt(s));
}

double left_tail(double x, double c, double alpha_minus, int order) {
    if (!(x < -2.0)) throw std::domain_error("left_tail: requires x < -2");
    const double mode = alpha_minus == 0.0 ? 0.0 : alpha_minus * left_exponential_mode(x, c);
    return std::sqrt(-x) * (1.0 + left_algebraic_correction(x, c, order) + mode);
}

AsymptoticPrediction predict(PredictionKind kind, double c, std::span<const double> xs, double coefficient) {
    AsymptoticPrediction p{kind, c, {}};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    switch (kind) {
        case PredictionKind::right_tail:
            for (double x : xs) p.values.emplace_back(x, right_tail(x, c, coefficient));
            break;
        case PredictionKind::left_tail:
            for (double x : xs) p.values.emplace_back(x, left_tail(x, c, coefficient));
            break;
        case PredictionKind::erf_profile:
            for (double x : xs) p.values.emplace_back(x, erf_profile(x, c));
            break;
        case PredictionKind::u_at_zero_negc:
            p.values.emplace_back(nan, u_at_zero_negc(c));
            break;
        case PredictionKind::front_loc_largec:
            p.values.emplace_back(nan, front_loc_largec(c));
            break;
        case PredictionKind::front_loc_negc:
            p.values.emplace_back(nan, front_loc_negc(c));
            break;
    }
    return p;
}

}  // namespace hmfront::asymptotics
