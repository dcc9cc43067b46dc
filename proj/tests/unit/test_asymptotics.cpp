#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "hmfront/asymptotics.hpp"
#include "hmfront/specialfns.hpp"

using namespace hmfront;
namespace as = hmfront::asymptotics;

TEST_CASE("erf profile value at the origin") {
    for (double c : {-1.0, -50.0, -200.0}) {
        CHECK(as::erf_profile(0.0, c) == doctest::Approx(std::pow(-c / std::numbers::pi, 0.25)).epsilon(1e-14));
        CHECK(as::u_at_zero_negc(c) == doctest::Approx(as::erf_profile(0.0, c)).epsilon(1e-14));
    }
    CHECK(as::u_at_zero_negc(-200.0) == doctest::Approx(2.8247).epsilon(1e-4));
    CHECK_THROWS_AS(as::erf_profile(0.0, 1.0), std::domain_error);
}

TEST_CASE("erf profile solves the drift-dominated balance c u' = x u + u^3") {
    const double c = -100.0;
    for (double x : {-20.0, -5.0, 0.0, 5.0, 12.0, 25.0}) {
        const double d = 1e-4;
        const double up = (as::erf_profile(x + d, c) - as::erf_profile(x - d, c)) / (2 * d);
        const double u = as::erf_profile(x, c);
        CHECK(c * up == doctest::Approx(x * u + u * u * u).epsilon(1e-6));
    }
    CHECK(std::isfinite(as::erf_profile(60.0, c)));
    CHECK(as::erf_profile(-60.0, c) == doctest::Approx(std::sqrt(60.0)).epsilon(0.02));
}

TEST_CASE("front location predictions") {
    CHECK(as::front_loc_negc(-100.0) == doctest::Approx(10.0));
    CHECK(as::front_loc_largec(10.0) == doctest::Approx(-25.0 - special::front_delay_constant()));
    CHECK_THROWS(as::front_loc_negc(1.0));
    CHECK_THROWS(as::front_loc_largec(-1.0));
}

TEST_CASE("right-tail slope is the derivative of the log shape") {
    for (double c : {0.0, 1.0, -3.0}) {
        for (double x : {3.0, 6.0, 10.0}) {
            const double d = 1e-5;
            const double num = (as::right_tail_log_shape(x + d, c) - as::right_tail_log_shape(x - d, c)) / (2 * d);
            CHECK(as::right_tail_log_slope(x, c) == doctest::Approx(num).epsilon(1e-8));
        }
    }
    CHECK(std::log(as::right_tail(5.0, 0.0, 2.0)) ==
          doctest::Approx(std::log(2.0) + as::right_tail_log_shape(5.0, 0.0)).epsilon(1e-12));
}

// Residual of u'' + c u' - x u - u³ for u = √s(1 + a), s = -x, by central differences.
static double series_residual(double x, double c, int order) {
    auto u = [&](double y) { return std::sqrt(-y) * (1.0 + as::left_algebraic_correction(y, c, order)); };
    const double d = 1e-3 * std::abs(x);
    const double u0 = u(x), um = u(x - d), up = u(x + d);
    return (up - 2 * u0 + um) / (d * d) + c * (up - um) / (2 * d) - x * u0 - u0 * u0 * u0;
}

TEST_CASE("left algebraic series: each order shrinks the residual") {
    for (double c : {-2.0, 0.0, 1.5}) {
        const double x = -40.0;
        const double r0 = std::abs(series_residual(x, c, 0));
        const double r1 = std::abs(series_residual(x, c, 1));
        const double r2 = std::abs(series_residual(x, c, 2));
        CHECK(r1 < 0.05 * r0);
        CHECK(r2 < 0.05 * r1);
    }
    CHECK(as::left_algebraic_correction(-2.0, 0.0, 1) == doctest::Approx(-1.0 / 64.0));
    CHECK(as::left_algebraic_correction(-2.0, 0.0, 2) == doctest::Approx(-1.0 / 64.0 - 73.0 / (128.0 * 64.0)));
    CHECK(as::left_algebraic_correction(-3.0, 5.0, 0) == 0.0);
}

TEST_CASE("left tail assembles series and exponential mode") {
    const double x = -9.0, c = 0.5, am = 0.3;
    const double expect = 3.0 * (1.0 + as::left_algebraic_correction(x, c, 1) + am * as::left_exponential_mode(x, c));
    CHECK(as::left_tail(x, c, am) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(as::left_exponential_mode(-20.0, 0.0) < as::left_exponential_mode(-10.0, 0.0));
}

TEST_CASE("predict tabulates the scalar and profile kinds") {
    const double xs[] = {-1.0, 0.0, 1.0};
    const auto p = as::predict(as::PredictionKind::erf_profile, -4.0, xs);
    REQUIRE(p.values.size() == 3);
    CHECK(p.values[1].second == doctest::Approx(as::erf_profile(0.0, -4.0)));
    const auto s = as::predict(as::PredictionKind::front_loc_negc, -16.0);
    REQUIRE(s.values.size() == 1);
    CHECK(std::isnan(s.values[0].first));
    CHECK(s.values[0].second == doctest::Approx(4.0));
}
