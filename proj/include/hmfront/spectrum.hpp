#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "hmfront/bvp.hpp"
#include "hmfront/grid.hpp"

namespace hmfront {

struct SpectrumReport {
    double c = 0.0;
    std::vector<double> eigenvalues;   // k largest, descending
    std::vector<double> ground_state;  // on the full grid, zero at both ends, max entry +1
    double potential_min = 0.0;
    double potential_argmin = 0.0;
    double ground_state_min = 0.0;       // smallest entry after normalization
    double max_rayleigh_residual = 0.0;  // max_j ‖M v_j - λ_j v_j‖∞ / (‖M‖∞ ‖v_j‖∞)
};

class SpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// V_i = μ(x_i) + c²/4 + 3u_i², the potential of the conjugated linearization.
std::vector<double> build_potential(const FrontProfile& p);

/// Second-order ∂ₓₓ - V on the interior nodes with Dirichlet truncation
/// (tridiagonal, rows/cols 0..n-3 correspond to grid nodes 1..n-2).
BandedMatrix conjugated_operator(const Grid& g, std::span<const double> v);

/// k largest eigenvalues of ∂ₓₓ - V by bisection (dstebz) with eigenvectors by
/// inverse iteration (dstein). Throws std::invalid_argument unless 1 <= k <= 10,
/// SpectrumError if the matrix is not symmetric to 1e-14 or a Rayleigh residual
/// exceeds 1e-10 (relative to ‖M‖∞).
SpectrumReport leading_eigenvalues_for_potential(const Grid& g, std::span<const double> v, int k);

/// Spectrum of the linearization about p; λ₀ = eigenvalues[0].
SpectrumReport leading_eigenvalues(const FrontProfile& p, int k = 1);

}  // namespace hmfront
