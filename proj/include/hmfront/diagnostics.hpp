#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmfront/bvp.hpp"

namespace hmfront {

inline constexpr double kDefaultDelta = 0.1;

struct LevelCrossing {
    double x = 0.0;
    double error_bound = 0.0;  // h²·|u''|/(8|u'|) at the bracketing cell
    std::size_t index = 0;     // left node of the bracketing cell
};

/// x_δ = sup{x : u(x) > δ} by linear interpolation on the last cell where u
/// drops through δ. Throws std::domain_error unless 0 < δ < max u.
LevelCrossing front_position_detail(const FrontProfile& p, double delta = kDefaultDelta);
double front_position(const FrontProfile& p, double delta = kDefaultDelta);

struct Crossing {
    double x = 0.0;
    double slope = 0.0;  // d/dx (x + u²) at the root
    bool transversal = false;
};

/// Roots with x < 0 of x·u + u³, located as sign changes of q = x + u² (same
/// zeros where u > 0, and q stays O(1)-transversal when u is tiny). Each
/// bracket is refined by bisection on the cubic through the four surrounding
/// nodes down to 1e-10.
std::vector<Crossing> crossing_details(const FrontProfile& p);
std::vector<double> crossings(const FrontProfile& p);

/// Checks that x·u + u³ > 0 at every node with x > 0 and u > 0.
bool positive_side_clean(const FrontProfile& p);

struct Admissibility {
    bool positive = false;                // u > 0 at interior nodes
    bool nonincreasing = false;           // u_{i+1} <= u_i everywhere
    bool strictly_decreasing = false;     // ∂ₓu < -1e-12 on the interface region
    bool left_limit = false;
    bool right_limit = false;
    double max_slope_interface = 0.0;     // max ∂ₓu where u >= 1e-6·max u
    double left_gap = 0.0;                // |u(x_min) - ref| / ref
    double left_tolerance = 0.0;
    double right_max = 0.0;               // max |u| over the last unit
    std::optional<double> violation_x;    // first location that broke a check
    std::string violation;

    bool admissible() const { return positive && nonincreasing && strictly_decreasing && left_limit && right_limit; }
};

/// Post-hoc verdict; never throws for a well-formed profile.
Admissibility admissibility(const FrontProfile& p);

struct FrontDiagnostics {
    double x_delta = 0.0;
    double x_delta_error_bound = 0.0;
    double delta = kDefaultDelta;
    std::vector<double> crossing_points;
    bool monotone_x = false;
    double min_slope_gap = 0.0;  // max of ∂ₓu over the grid interior
    double u_at_zero = 0.0;      // NaN when 0 lies outside the grid
};

FrontDiagnostics diagnose(const FrontProfile& p, double delta = kDefaultDelta);

}  // namespace hmfront
