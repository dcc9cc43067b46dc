#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "hmfront/continuation.hpp"
#include "hmfront/newton.hpp"
#include "oracles.hpp"

using namespace hmfront;

TEST_CASE("banded LU reproduces the tridiagonal Toeplitz inverse") {
    const std::size_t n = 40;
    BandedMatrix a(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = 2.0;
        if (i > 0) a.at(i, i - 1) = -1.0;
        if (i + 1 < n) a.at(i, i + 1) = -1.0;
    }
    const BandedLU lu(a);
    for (std::size_t j : {std::size_t{0}, std::size_t{17}, n - 1}) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        const auto col = lu.solve(e);
        for (std::size_t i = 0; i < n; ++i) CHECK(col[i] == doctest::Approx(oracle::toeplitz_inverse(n, i, j)).epsilon(1e-12));
    }
}

TEST_CASE("banded LU agrees with dense elimination when pivoting is needed") {
    const std::size_t n = 25, bw = 4;
    BandedMatrix a(n, bw);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (a.in_band(i, j)) dense[i][j] = a.at(i, j) = d(rng);
        }
    }
    std::vector<double> b(n);
    for (double& e : b) e = d(rng);
    const auto x = banded_lu_solve(a, b);
    const auto ref = oracle::dense_solve(dense, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("singular matrices are reported") {
    BandedMatrix a(5, 1);
    for (std::size_t i = 0; i < 5; ++i) a.at(i, i) = 1.0;
    a.at(2, 2) = 0.0;
    a.at(2, 1) = 0.0;
    try {
        BandedLU lu(a);
        FAIL("expected a singular-matrix error");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::singular);
    }
}

TEST_CASE("Hastings-McLeod front against a shooting integration") {
    const FrontProfile p = hastings_mcleod_seed();
    REQUIRE(p.converged);
    CHECK(p.residual_norm <= 1e-10);
    const std::vector<double> xs{2.0, 1.0, 0.0, -1.0, -2.0};
    const auto ref = oracle::hastings_mcleod(xs);
    for (std::size_t k = 0; k < xs.size(); ++k) CHECK(p.value_at(xs[k]) == doctest::Approx(ref[k]).epsilon(1e-5));
    CHECK(p.value_at(0.0) == doctest::Approx(0.5191).epsilon(1e-4));
}

TEST_CASE("Newton converges quadratically from a nearby guess") {
    FrontProfile g = hastings_mcleod_seed();
    for (std::size_t i = 0; i < g.u.size(); ++i) g.u[i] *= 1.0 + 0.02 * std::exp(-g.grid.x(i) * g.grid.x(i));
    g.converged = false;
    const auto [p, rep] = solve(g, BoundaryClosure{});
    CHECK(rep.converged);
    CHECK(rep.iterations <= 6);
    CHECK(rep.damped_steps == 0);
    REQUIRE(rep.quadratic_constant.has_value());
    const auto& r = rep.residual_history;
    REQUIRE(r.size() >= 3);
    // superlinear on the last transition above the roundoff floor (~1e-11)
    const std::size_t k = r.size() - 3;
    CHECK(r[k + 1] / r[0] < std::pow(r[k] / r[0], 1.5));
    CHECK(rep.positive);
    CHECK(rep.monotone);
    CHECK(rep.residual_history.back() <= 1e-10);
}

TEST_CASE("iteration limit and configuration checks") {
    FrontProfile g;
    g.grid = default_grid(0.0, 0.05);
    g.u.resize(g.grid.size());
    for (std::size_t i = 0; i < g.u.size(); ++i) g.u[i] = ramp_guess(g.grid.x(i));
    SolverConfig cfg;
    cfg.max_iter = 1;
    try {
        solve(g, BoundaryClosure{}, cfg);
        FAIL("expected max_iter");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::max_iter);
        CHECK(e.report().iterations == 1);
        CHECK(std::string(to_string(e.kind())) == "max_iter");
    }
    cfg.max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    SolverConfig bad;
    bad.tol_residual = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("max norm") {
    const std::vector<double> v{1.0, -3.0, 2.0};
    CHECK(max_norm(v) == 3.0);
}
