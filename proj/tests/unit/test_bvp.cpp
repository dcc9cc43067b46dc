#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "hmfront/asymptotics.hpp"
#include "hmfront/bvp.hpp"
#include "hmfront/continuation.hpp"

using namespace hmfront;

TEST_CASE("ramps") {
    CHECK(Ramp::linear()(3.5) == 3.5);
    const Ramp r = Ramp::tanh(0.01);
    CHECK(r(50.0) == doctest::Approx(std::tanh(0.5)));
    CHECK_THROWS_AS(Ramp::tanh(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Ramp::tanh(1.5), std::invalid_argument);
}

TEST_CASE("default domain keeps the predicted interface well inside") {
    const Domain d0 = default_domain(0.0);
    CHECK(d0.x_min == doctest::Approx(-30.0));
    CHECK(d0.x_max == doctest::Approx(15.0));
    for (double c : {4.0, 12.0, 30.0}) {
        const Domain d = default_domain(c);
        const double xf = asymptotics::front_loc_largec(c);
        CHECK(xf - d.x_min >= 10.0);
        CHECK(d.x_max - xf >= 10.0);
    }
    for (double c : {-4.0, -100.0, -200.0}) {
        const Domain d = default_domain(c);
        CHECK(d.x_min <= -25.0);
        CHECK(d.x_max >= std::sqrt(-c) + 15.0);
    }
    const Grid g = default_grid(3.0, 0.01);
    CHECK(g.h() == doctest::Approx(0.01));
}

TEST_CASE("left boundary data") {
    const BoundaryClosure bc;
    const double x = -30.0;
    CHECK(bc.left_value(x, 0.0, Ramp::linear()) == doctest::Approx(std::sqrt(30.0) * (1.0 - 1.0 / (8.0 * 27000.0))));
    CHECK(bc.left_value(x, 2.0, Ramp::linear()) ==
          doctest::Approx(std::sqrt(30.0) * (1.0 + asymptotics::left_algebraic_correction(x, 2.0, 1))));
    BoundaryClosure zero;
    zero.kind = ClosureKind::dirichlet_zero;
    CHECK(zero.left_value(x, 0.0, Ramp::linear()) == 0.0);
    CHECK(bc.left_value(-3000.0, 0.0, Ramp::tanh(1e-3)) == doctest::Approx(std::sqrt(std::tanh(3.0))));
    BoundaryClosure bare;
    bare.left_order = 0;
    CHECK(bare.left_value(x, 2.0, Ramp::linear()) == doctest::Approx(std::sqrt(30.0)));
}

TEST_CASE("residual rows") {
    FrontProfile p;
    p.c = 0.7;
    p.grid = Grid(-10.0, 5.0, 301);
    p.u.assign(p.grid.size(), 0.0);
    for (std::size_t i = 0; i < p.u.size(); ++i) p.u[i] = ramp_guess(p.grid.x(i));
    const BoundaryClosure bc;
    const auto f = residual(p, bc);
    CHECK(f.front() == doctest::Approx(p.u.front() - bc.left_value(-10.0, 0.7, p.ramp)));
    CHECK(f.back() == doctest::Approx(p.u.back()));
    const std::size_t i = 150;
    const auto d2 = d2_apply(p.grid, p.u);
    const auto d1 = d1_apply(p.grid, p.u, 1);
    const double x = p.grid.x(i), u = p.u[i];
    CHECK(f[i] == doctest::Approx(d2[i] + 0.7 * d1[i] - x * u - u * u * u).epsilon(1e-12));
    p.u[3] = std::nan("");
    CHECK_THROWS_AS(residual(p, bc), std::invalid_argument);
    p.u.pop_back();
    CHECK_THROWS_AS(residual(p, bc), std::invalid_argument);
}

TEST_CASE("Jacobian matches directional differences") {
    for (double c : {-1.5, 0.0, 2.0}) {
        FrontProfile p;
        p.c = c;
        p.grid = Grid::on_lattice(-12.0, 6.0, 0.02);
        p.u.resize(p.grid.size());
        for (std::size_t i = 0; i < p.u.size(); ++i) p.u[i] = ramp_guess(p.grid.x(i));
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> d(-1, 1);
        std::vector<double> v(p.u.size());
        for (double& e : v) e = d(rng);
        const BoundaryClosure bc;
        const auto jv = jacobian(p, bc).apply(v);
        const double t = 1e-6;
        FrontProfile q = p, r = p;
        for (std::size_t i = 0; i < v.size(); ++i) q.u[i] += t * v[i], r.u[i] -= t * v[i];
        const auto fq = residual(q, bc), fr = residual(r, bc);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            num = std::max(num, std::abs((fq[i] - fr[i]) / (2 * t) - jv[i]));
            den = std::max(den, std::abs(jv[i]));
        }
        CHECK(num / den < 1e-7);
    }
}
