#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hmfront/asymptotics.hpp"
#include "hmfront/continuation.hpp"
#include "hmfront/diagnostics.hpp"

using namespace hmfront;

TEST_CASE("waypoints") {
    const auto w = waypoints_between(0.0, -2.0, 0.5);
    REQUIRE(w.size() == 4);
    CHECK(w.front() == -0.5);
    CHECK(w.back() == -2.0);
    const auto u = waypoints_between(0.0, 1.2, 0.5);
    CHECK(u.back() == 1.2);
}

TEST_CASE("reinterpolation copies shared nodes and extends by the tails") {
    const FrontProfile p = hastings_mcleod_seed({}, 0.02);
    const Grid wide = Grid::on_lattice(-50.0, 20.0, 0.02);
    const FrontProfile q = reinterpolate(p, wide);
    const auto k = p.grid.node_offset_in(wide);
    REQUIRE(k.has_value());
    for (std::size_t i = 0; i < p.u.size(); i += 97) CHECK(q.u[i + *k] == p.u[i]);
    const double x = -45.0;
    CHECK(q.value_at(x) == doctest::Approx(std::sqrt(45.0) * (1.0 - 1.0 / (8.0 * 45.0 * 45.0 * 45.0))).epsilon(1e-12));
    CHECK(q.value_at(18.0) == 0.0);
    CHECK_THROWS_AS(reinterpolate(p, Grid(100.0, 110.0, 11)), std::invalid_argument);
}

TEST_CASE("refined grid needs only a few Newton iterations") {
    const FrontProfile p = hastings_mcleod_seed({}, 0.02);
    const FrontProfile g = reinterpolate(p, Grid::on_lattice(p.grid.x_min(), p.grid.x_max(), 0.01));
    const auto [q, rep] = solve(g, BoundaryClosure{});
    CHECK(rep.iterations <= 5);
    CHECK(q.value_at(0.0) == doctest::Approx(p.value_at(0.0)).epsilon(1e-6));
}

TEST_CASE("short branch is ordered in c") {
    ContinuationConfig cc;
    cc.h = 0.02;
    const FrontProfile seed = hastings_mcleod_seed({}, 0.02);
    const Branch up = continue_branch(seed, 2.0, 0.5, {}, cc);
    const Branch down = continue_branch(seed, -2.0, 0.5, {}, cc);
    CHECK_FALSE(up.terminated_early);
    CHECK_FALSE(down.terminated_early);
    CHECK(up.last_good_c == 2.0);
    CHECK(down.last_good_c == -2.0);
    const Branch b = merge_branches(down, up);
    REQUIRE(b.points.size() >= 5);
    for (std::size_t j = 0; j + 1 < b.points.size(); ++j) {
        const auto& lo = b.points[j];
        const auto& hi = b.points[j + 1];
        CHECK(lo.c < hi.c);
        CHECK(compare_ordering(lo.profile, hi.profile).ordered);
        CHECK(front_position(lo.profile) > front_position(hi.profile));
        CHECK(lo.profile.value_at(0.0) > hi.profile.value_at(0.0));
        CHECK(admissibility(hi.profile).admissible());
    }
}

TEST_CASE("continue_through lands on every waypoint") {
    ContinuationConfig cc;
    cc.h = 0.02;
    const FrontProfile seed = hastings_mcleod_seed({}, 0.02);
    const Branch b = continue_through(seed, {0.7, 1.3, 3.0}, 0.5, {}, cc);
    for (double c : {0.7, 1.3, 3.0}) {
        bool found = false;
        for (const auto& p : b.points) found = found || p.c == c;
        CHECK(found);
    }
    const FrontProfile f = front_at(1.3, {}, cc);
    CHECK(f.c == 1.3);
    CHECK(f.converged);
}

TEST_CASE("continuation grid grows only when the default domain is not covered") {
    const Grid g = default_grid(0.0, 0.02);
    const Grid same = continuation_grid(g, 0.0, 0.0, 0.02);
    CHECK(same == g);
    const Grid wider = continuation_grid(g, 12.0, 0.0, 0.02);
    CHECK(wider.x_min() <= default_domain(12.0).x_min);
}

TEST_CASE("ordering comparison detects a violation") {
    const FrontProfile p = hastings_mcleod_seed({}, 0.02);
    FrontProfile q = p;
    for (double& v : q.u) v *= 0.99;
    CHECK(compare_ordering(p, q).ordered);
    const Ordering o = compare_ordering(q, p);
    CHECK_FALSE(o.ordered);
    CHECK(o.min_gap < 0.0);
    CHECK(o.compared > 0);
}
