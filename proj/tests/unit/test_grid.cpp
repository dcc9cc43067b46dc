#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "hmfront/grid.hpp"

using namespace hmfront;

TEST_CASE("grid construction") {
    const Grid g(-1.0, 1.0, 21);
    CHECK(g.h() == doctest::Approx(0.1));
    CHECK(g.x(0) == -1.0);
    CHECK(g.x(20) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Grid(1.0, -1.0, 21), std::invalid_argument);
    CHECK_THROWS_AS(Grid(0.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("lattice grids share nodes") {
    const Grid a = Grid::on_lattice(-30.0, 15.0, 0.01);
    const Grid b = Grid::on_lattice(-41.237, 22.5, 0.01);
    CHECK(a.x_min() == doctest::Approx(-30.0));
    CHECK(b.x_min() <= -41.237);
    const auto k = a.node_offset_in(b);
    REQUIRE(k.has_value());
    for (std::size_t i : {std::size_t{0}, std::size_t{1234}, a.size() - 1}) CHECK(a.x(i) == b.x(i + *k));
}

TEST_CASE("Fornberg weights reproduce the classical five-point stencils") {
    const std::vector<double> nodes{-2, -1, 0, 1, 2};
    const auto w2 = fd_weights(0.0, nodes, 2);
    const double e2[] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    const auto w1 = fd_weights(0.0, nodes, 1);
    const double e1[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    for (int i = 0; i < 5; ++i) {
        CHECK(w2[i] == doctest::Approx(e2[i]).epsilon(1e-14));
        CHECK(w1[i] == doctest::Approx(e1[i]).epsilon(1e-14));
    }
}

TEST_CASE("difference operators are exact on quartics") {
    const Grid g(-1.0, 2.0, 31);
    std::vector<double> u(g.size());
    auto p = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x + 0.3 * x * x * x - 0.7 * x * x * x * x; };
    auto p1 = [](double x) { return -2.0 + x + 0.9 * x * x - 2.8 * x * x * x; };
    auto p2 = [](double x) { return 1.0 + 1.8 * x - 8.4 * x * x; };
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = p(g.x(i));
    const auto d2 = d2_apply(g, u);
    CHECK(d2.front() == 0.0);
    CHECK(d2.back() == 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) CHECK(d2[i] == doctest::Approx(p2(g.x(i))).epsilon(1e-9));
    for (int s : {-1, 0, 1}) {
        const auto d1 = d1_apply(g, u, s);
        for (std::size_t i = 1; i + 1 < u.size(); ++i) CHECK(d1[i] == doctest::Approx(p1(g.x(i))).epsilon(1e-9));
    }
}

TEST_CASE("upwind windows lean toward the drift") {
    const Grid g(0.0, 1.0, 101);
    CHECK(d1_row(g, 50, 1).first == 49);
    CHECK(d1_row(g, 50, -1).first == 47);
    CHECK(d1_row(g, 50, 0).first == 48);
    CHECK(d1_row(g, 1, -1).first == 0);
    CHECK(d1_row(g, 99, 1).first + 5 == 101);
    CHECK(d2_row(g, 1).weights.size() == 6);
    CHECK(d2_row(g, 50).weights.size() == 5);
    CHECK(upwind_sign_for(2.0) == 1);
    CHECK(upwind_sign_for(-2.0) == -1);
    CHECK(upwind_sign_for(0.0) == 0);
}

TEST_CASE("observed order of accuracy is four") {
    auto err = [](std::size_t n, bool second) {
        const Grid g(0.0, 3.0, n);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = std::cos(2.0 * g.x(i));
        const auto d = second ? d2_apply(g, u) : d1_apply(g, u, 1);
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double x = g.x(i);
            e = std::max(e, std::abs(d[i] - (second ? -4.0 * std::cos(2 * x) : -2.0 * std::sin(2 * x))));
        }
        return e;
    };
    for (bool second : {true, false}) {
        const double order = std::log2(err(31, second) / err(61, second));
        CHECK(order > 3.7);
        CHECK(order < 4.3);
    }
}

TEST_CASE("banded matrix storage and products") {
    BandedMatrix a(6, 2);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<std::vector<double>> dense(6, std::vector<double>(6, 0.0));
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (a.in_band(i, j)) dense[i][j] = a.at(i, j) = d(rng);
        }
    }
    CHECK_FALSE(a.in_band(0, 3));
    CHECK(a(0, 3) == 0.0);
    CHECK_THROWS_AS(a.at(0, 3), std::out_of_range);
    const std::vector<double> x{1, -2, 0.5, 3, -1, 2};
    const auto y = a.apply(x);
    double norm = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        double s = 0.0, r = 0.0;
        for (std::size_t j = 0; j < 6; ++j) s += dense[i][j] * x[j], r += std::abs(dense[i][j]);
        CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
        norm = std::max(norm, r);
    }
    CHECK(a.norm_inf() == doctest::Approx(norm));
    a.set_identity_row(3);
    CHECK(a(3, 3) == 1.0);
    CHECK(a(3, 2) == 0.0);
    CHECK_THROWS_AS(BandedMatrix(4, 5), std::invalid_argument);
}
