#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmfront/bvp.hpp"
#include "hmfront/newton.hpp"

namespace hmfront {

/// Cubic (four-point Lagrange) interpolation of p onto g_new. Nodes shared
/// with p.grid are copied exactly; left of p.grid the closure series
/// √(-x)(1 + a(x)) (or √(-tanh εx)) is used, right of it 0. Negative values
/// are clipped to 0. Throws std::invalid_argument when the grids do not overlap.
FrontProfile reinterpolate(const FrontProfile& p, const Grid& g_new);

/// Same, after translating p by `shift` in x.
FrontProfile reinterpolate_shifted(const FrontProfile& p, const Grid& g_new, double shift);

enum class Predictor {
    previous,   // previous solution as initial guess
    translated  // previous solution moved by the secant estimate of the interface shift
};

struct ContinuationConfig {
    double dc_min = 1e-4;
    double dc_max = 1.0;
    double grow = 1.5;
    int successes_to_grow = 3;
    double h = kDefaultSpacing;
    double delta = 0.1;  // level used for the interface-shift secant
    Predictor predictor = Predictor::translated;
    BoundaryClosure closure{};
};

struct BranchPoint {
    double c = 0.0;
    FrontProfile profile;
    SolveReport report;
};

struct Branch {
    enum class Direction { increasing_c, decreasing_c };

    std::vector<BranchPoint> points;  // sorted by c
    Direction direction = Direction::increasing_c;
    std::vector<std::pair<double, std::string>> failures;
    bool terminated_early = false;
    double last_good_c = 0.0;
};

/// Natural-parameter continuation from `seed` toward c_target. The step halves
/// on a failed or inadmissible solve (down to dc_min, after which the branch
/// stops with terminated_early set) and grows 1.5x after 3 successes (up to
/// dc_max). The grid is rebuilt only when it no longer covers default_domain.
/// Throws std::invalid_argument if the seed is not converged.
Branch continue_branch(const FrontProfile& seed, double c_target, double dc_init, const SolverConfig& cfg = {},
                       const ContinuationConfig& cc = {});

/// Continues through the waypoints in order (each one becomes an exact branch
/// point unless the branch stops early). All accepted points are kept.
Branch continue_through(const FrontProfile& seed, const std::vector<double>& waypoints, double dc_init,
                        const SolverConfig& cfg = {}, const ContinuationConfig& cc = {});

/// Evenly spaced waypoints from `from` to `to` (inclusive, `from` excluded) with spacing at most `spacing`.
std::vector<double> waypoints_between(double from, double to, double spacing);

/// Smooth admissible-shaped initial guess √((√(x²+1) - x)/2)·(1 - tanh x)/2.
double ramp_guess(double x);

/// The c = 0 front on default_grid(0, h), solved from ramp_guess.
FrontProfile hastings_mcleod_seed(const SolverConfig& cfg = {}, double h = kDefaultSpacing,
                                  const BoundaryClosure& closure = {});

/// Front at drift c: the c = 0 seed continued to c. Throws SolverError(max_iter)
/// when the branch stops short of c.
FrontProfile front_at(double c, const SolverConfig& cfg = {}, const ContinuationConfig& cc = {});

/// Joins a decreasing and an increasing branch grown from the same seed.
Branch merge_branches(const Branch& down, const Branch& up);

/// Grid used for a continuation step to c_new from `current`: kept if it covers
/// default_domain(c_new), otherwise widened to cover default_domain at
/// c_new and c_new + lookahead.
Grid continuation_grid(const Grid& current, double c_new, double lookahead, double h);

struct Ordering {
    bool ordered = false;      // u(x; c_lo) > u(x; c_hi) on every compared node
    double min_gap = 0.0;      // min of u(x; c_lo) - u(x; c_hi)
    double worst_x = 0.0;
    std::size_t compared = 0;  // nodes compared
    double window_lo = 0.0, window_hi = 0.0;
};

/// Pointwise comparison of two profiles (c_lo < c_hi) on common nodes of the
/// grid intersection shrunk by `shrink` at each end; nodes where both values
/// are below 1e-290 are skipped.
Ordering compare_ordering(const FrontProfile& lo, const FrontProfile& hi, double shrink = 1.0);

}  // namespace hmfront
