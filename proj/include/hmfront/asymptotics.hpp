#pragma once

#include <span>
#include <utility>
#include <vector>

// Closed-form predictions for admissible fronts of u'' + c u' - x u - u^3 = 0.
// Everything is expressed in the unscaled (x, u, c) variables.
namespace hmfront::asymptotics {

enum class PredictionKind { right_tail, left_tail, erf_profile, u_at_zero_negc, front_loc_largec, front_loc_negc };

struct AsymptoticPrediction {
    PredictionKind kind = PredictionKind::erf_profile;
    double c = 0.0;
    std::vector<std::pair<double, double>> values;  // (x, prediction); x = NaN for scalars
};

/// Leading-order profile for c < 0:
///   u = (-c)^{1/4} e^{x²/(2c)} / (π^{1/4} (erf(x/√(-c)) + 1)^{1/2}).
/// Evaluated through erfcx so that both tails stay finite.
/// Throws std::domain_error for c >= 0.
double erf_profile(double x, double c);

/// (-c)^{1/4} / π^{1/4}, the value of erf_profile at x = 0.
double u_at_zero_negc(double c);

/// -c²/4 - Ω₀ (15/16)^{2/3}; requires c > 0.
double front_loc_largec(double c);

/// √(-c); requires c < 0.
double front_loc_negc(double c);

/// ln of the right-tail shape -(2/3)(x + c²/4)^{3/2} - (c/2) x - (1/4) ln x.
double right_tail_log_shape(double x, double c);

/// α₊ exp(-(2/3)(x + c²/4)^{3/2} - (c/2) x) x^{-1/4}.
/// Requires x > max(0, -c²/4) + 1.
double right_tail(double x, double c, double alpha_plus);

/// Derivative of right_tail_log_shape in x.
double right_tail_log_slope(double x, double c);

/// Relative algebraic correction a(x) in u = √(-x)(1 + a(x)) as x → -∞.
///
/// With s = -x:
///   order 0: a = 0
///   order 1: a = -c/(4s²) - 1/(8s³)
///   order 2: a = -c/(4s²) - 1/(8s³) - 9c²/(32s⁴) - 23c/(32s⁵) - (89c³ + 73)/(128s⁶)
/// The coefficients follow from dominant balance in the stationary equation;
/// at c = 0 they reduce to the Hastings-McLeod series 1 - 1/(8s³) - 73/(128s⁶).
double left_algebraic_correction(double x, double c, int order);

/// Exponential left-tail mode multiplying α₋:
///   c = 0: e^{-(2√2/3)(-x)^{3/2}} / (-x)^{3/4}
///   c ≠ 0: exp(-(2√2/3)(-x)^{3/2} - c x/2 - c²/(4√2) (-x)^{1/2})
double left_exponential_mode(double x, double c);

/// √(-x) (1 + a(x) + α₋ · mode(x)). Requires x < -2.
double left_tail(double x, double c, double alpha_minus, int order = 1);

/// Tabulate one prediction kind at the given abscissae (ignored for scalars).
AsymptoticPrediction predict(PredictionKind kind, double c, std::span<const double> xs = {},
                             double coefficient = 1.0);

}  // namespace hmfront::asymptotics
