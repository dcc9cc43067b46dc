#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hmfront/continuation.hpp"
#include "hmfront/diagnostics.hpp"

using namespace hmfront;

static FrontProfile synthetic(double (*f)(double), double lo = -20.0, double hi = 10.0) {
    FrontProfile p;
    p.grid = Grid::on_lattice(lo, hi, 0.01);
    p.u.resize(p.grid.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) p.u[i] = f(p.grid.x(i));
    return p;
}

static double bisect(double (*g)(double), double a, double b) {
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        ((g(a) < 0) == (g(m) < 0) ? a : b) = m;
    }
    return 0.5 * (a + b);
}

TEST_CASE("interface position of a known profile") {
    const FrontProfile p = synthetic([](double x) { return 0.5 * (1.0 - std::tanh(x - 1.0)); });
    const double exact = 1.0 + std::atanh(1.0 - 2.0 * 0.1);
    const auto d = front_position_detail(p, 0.1);
    CHECK(std::abs(d.x - exact) <= 1.5 * d.error_bound);
    CHECK(d.error_bound < 1e-4);
    CHECK(std::abs(front_position(p, 0.3) - (1.0 + std::atanh(0.4))) < 1e-4);
    CHECK_THROWS_AS(front_position(p, 2.0), std::domain_error);
    CHECK_THROWS_AS(front_position(p, 0.0), std::domain_error);
}

static double guess_shape(double x) { return std::sqrt(0.5 * (std::hypot(x, 1.0) - x)) * 0.5 * (1.0 - std::tanh(x)); }
static double guess_gap(double x) { return x + guess_shape(x) * guess_shape(x); }

TEST_CASE("crossings of sqrt(-x) located against a fine scan") {
    // this shape dips below √(-x) between two roots near -1.3 and -0.5
    std::vector<double> roots;
    for (double x = -10.0; x < 0.0; x += 1e-3) {
        if ((guess_gap(x) < 0) != (guess_gap(x + 1e-3) < 0)) roots.push_back(bisect(guess_gap, x, x + 1e-3));
    }
    REQUIRE(roots.size() == 2);
    const FrontProfile p = synthetic(guess_shape);
    const auto c = crossing_details(p);
    REQUIRE(c.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(c[k].x == doctest::Approx(roots[k]).epsilon(1e-8));
        CHECK(c[k].transversal);
    }
    CHECK(c[0].slope < 0.0);
    CHECK(c[1].slope > 0.0);
    CHECK(positive_side_clean(p));
    CHECK(crossings(p).size() == 2);
}

TEST_CASE("admissibility of the c = 0 front and of a damaged copy") {
    const FrontProfile p = hastings_mcleod_seed();
    const Admissibility a = admissibility(p);
    CHECK(a.admissible());
    CHECK(a.max_slope_interface < 0.0);
    CHECK(a.left_gap <= a.left_tolerance);
    CHECK(a.right_max < 1e-8);

    FrontProfile bad = p;
    const std::size_t i = bad.grid.nearest(-3.0);
    bad.u[i] += 0.05;
    const Admissibility b = admissibility(bad);
    CHECK_FALSE(b.admissible());
    CHECK_FALSE(b.nonincreasing);
    REQUIRE(b.violation_x.has_value());
    CHECK(std::abs(*b.violation_x + 3.0) < 0.05);
    CHECK_FALSE(b.violation.empty());
}

TEST_CASE("diagnose collects the interface summary") {
    const FrontProfile p = hastings_mcleod_seed();
    const FrontDiagnostics d = diagnose(p);
    CHECK(d.delta == 0.1);
    CHECK(d.x_delta == doctest::Approx(front_position(p)));
    CHECK(d.monotone_x);
    CHECK(d.min_slope_gap < 0.0);
    CHECK(d.crossing_points.size() == 1);
    CHECK(d.u_at_zero == doctest::Approx(p.value_at(0.0)));
    const FrontProfile right = synthetic([](double x) { return std::exp(-x); }, 1.0, 20.0);
    CHECK(std::isnan(diagnose(right).u_at_zero));
}
