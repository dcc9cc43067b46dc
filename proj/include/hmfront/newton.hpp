#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hmfront/bvp.hpp"
#include "hmfront/grid.hpp"

namespace hmfront {

enum class Damping { none, armijo };

struct SolverConfig {
    double tol_residual = 1e-10;  // max-norm of F
    int max_iter = 50;
    Damping damping = Damping::armijo;
    bool positivity_clip = false;
    double backtrack = 0.5;
    double min_step = 1.0 / 1048576.0;  // 2^-20

    /// Throws std::invalid_argument on a non-positive tolerance or max_iter < 1.
    void validate() const;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> step_norms;         // ‖λδ‖∞ per iteration
    std::vector<double> residual_history;   // ‖F‖∞ before each iteration and at exit
    std::vector<double> step_lengths;       // accepted λ per iteration
    int damped_steps = 0;                   // iterations with λ < 1
    std::optional<double> quadratic_constant;  // max r_{k+1}/r_k² over the last 3 iterations
    bool positive = false;                  // u > 0 at interior nodes
    bool monotone = false;                  // u strictly decreasing
};

class SolverError : public std::runtime_error {
public:
    enum class Kind { max_iter, singular, divergence };

    SolverError(Kind kind, const std::string& what, SolveReport report = {})
        : std::runtime_error(what), kind_(kind), report_(std::move(report)) {}

    Kind kind() const { return kind_; }
    const SolveReport& report() const { return report_; }

private:
    Kind kind_;
    SolveReport report_;
};

const char* to_string(SolverError::Kind kind);

/// LU factorization of a BandedMatrix with partial pivoting inside the band.
class BandedLU {
public:
    /// Throws SolverError(singular) when a pivot falls below 1e-14·‖A‖∞.
    explicit BandedLU(const BandedMatrix& a);

    std::vector<double> solve(std::span<const double> b) const;
    std::size_t rows() const { return n_; }

private:
    std::size_t n_ = 0;
    int kl_ = 0;
    int ldab_ = 0;
    std::vector<double> ab_;  // LAPACK band layout, column-major
    std::vector<int> ipiv_;
};

std::vector<double> banded_lu_solve(const BandedMatrix& a, std::span<const double> b);

/// Damped Newton iteration for residual(p, bc) = 0 starting from `initial`.
/// Returns the converged profile (residual_norm set, converged = true) and the
/// report. Throws SolverError on max_iter, a singular Jacobian, or divergence
/// (‖F‖∞ grows 10x over 5 iterations).
std::pair<FrontProfile, SolveReport> solve(const FrontProfile& initial, const BoundaryClosure& bc,
                                           const SolverConfig& cfg = {});

double max_norm(std::span<const double> v);

}  // namespace hmfront
