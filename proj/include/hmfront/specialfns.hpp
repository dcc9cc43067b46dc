#pragma once

#include <utility>

namespace hmfront::special {

// Gamma-function values used by the J_{±1/3} series.
// Γ(1/3) = 2.678938534707747633..., standard tabulated value.
inline constexpr double kGammaOneThird = 2.6789385347077476337;
// Γ(2/3) = 2π / (√3 Γ(1/3)) (reflection formula): 1.354117939426400416...
inline constexpr double kGammaTwoThirds = 1.3541179394264004169;
// Γ(4/3) = Γ(1/3) / 3.
inline constexpr double kGammaFourThirds = 0.8929795115692492112;

/// Error function. Absolute error below 1e-14 on the whole real line.
double erf(double x);

/// Complementary error function 1 - erf(x), accurate in the far right tail.
double erfc(double x);

/// Scaled complementary error function exp(x²)·erfc(x) for x >= 0.
double erfcx(double x);

enum class ThirdOrder { plus = 1, minus = -1 };

/// Result of a J_{±1/3} evaluation with its series truncation bound.
struct BesselValue {
    double value = 0.0;
    double truncation_bound = 0.0;  // magnitude of the first omitted term
    int terms = 0;
};

/// J_{±1/3}(x) by the ascending power series, x > 0.
///
/// The sum is carried in extended precision so that the cancellation of the
/// alternating series stays below 1e-12 relative up to x = 30.
BesselValue bessel_j_third_series(ThirdOrder order, double x);

/// J_{sign/3}(x) for sign = ±1. Throws std::domain_error for x <= 0.
double bessel_j_third(int sign, double x);

/// z ↦ J_{-1/3}(2z^{3/2}/3) + J_{1/3}(2z^{3/2}/3). Equals 3 Ai(-z)/√z.
double bessel_combination(double z);

struct Omega0Result {
    double value = 0.0;
    double residual = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
};

/// Smallest positive zero of bessel_combination.
///
/// A scan with step 1e-3 brackets the first sign change on (0, 10], bisection
/// narrows it to 1e-14. Throws std::runtime_error if no sign change exists.
Omega0Result omega0();

/// Ω₀·(15/16)^{2/3}, the constant offset of the large-c front position.
double front_delay_constant();

}  // namespace hmfront::special
