#include "hmfront/newton.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hmfront {

void SolverConfig::validate() const {
    if (!(tol_residual > 0.0)) throw std::invalid_argument("SolverConfig: tol_residual must be positive");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be at least 1");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("SolverConfig: backtrack must lie in (0, 1)");
    if (!(min_step > 0.0 && min_step <= 1.0)) throw std::invalid_argument("SolverConfig: min_step must lie in (0, 1]");
}

const char* to_string(SolverError::Kind kind) {
    switch (kind) {
        case SolverError::Kind::max_iter: return "max_iter";
        case SolverError::Kind::singular: return "singular";
        case SolverError::Kind::divergence: return "divergence";
    }
    return "unknown";
}

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

BandedLU::BandedLU(const BandedMatrix& a) : n_(a.rows()), kl_(static_cast<int>(a.bandwidth())) {
    if (n_ == 0) throw std::invalid_argument("BandedLU: empty matrix");
    const int n = static_cast<int>(n_);
    ldab_ = 3 * kl_ + 1;  // kl extra rows for fill-in
    ab_.assign(static_cast<std::size_t>(ldab_) * n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t i0 = j >= a.bandwidth() ? j - a.bandwidth() : 0;
        const std::size_t i1 = std::min(n_ - 1, j + a.bandwidth());
        for (std::size_t i = i0; i <= i1; ++i) {
            const auto row = static_cast<std::size_t>(2 * kl_) + i - j;
            ab_[j * static_cast<std::size_t>(ldab_) + row] = a(i, j);
        }
    }
    ipiv_.assign(n_, 0);
    const double anorm = a.norm_inf();
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl_, kl_, ab_.data(), ldab_, ipiv_.data());
    if (info < 0) throw std::invalid_argument("BandedLU: dgbtrf rejected its arguments");
    const double threshold = 1e-14 * anorm;
    for (std::size_t j = 0; j < n_; ++j) {
        const double pivot = ab_[j * static_cast<std::size_t>(ldab_) + static_cast<std::size_t>(2 * kl_)];
        if (info > 0 || !(std::abs(pivot) >= threshold)) {
            throw SolverError(SolverError::Kind::singular,
                              "banded LU: pivot below 1e-14*||A|| at row " + std::to_string(info > 0 ? info - 1 : static_cast<int>(j)));
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
    if (b.size() != n_) throw std::invalid_argument("BandedLU::solve: length mismatch");
    std::vector<double> x(b.begin(), b.end());
    const int n = static_cast<int>(n_);
    const lapack_int info =
        LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl_, kl_, 1, ab_.data(), ldab_, ipiv_.data(), x.data(), n);
    if (info != 0) throw std::invalid_argument("BandedLU::solve: dgbtrs failed");
    return x;
}

std::vector<double> banded_lu_solve(const BandedMatrix& a, std::span<const double> b) {
    return BandedLU(a).solve(b);
}

namespace {

void record_shape(const std::vector<double>& u, SolveReport& r) {
    r.positive = true;
    r.monotone = true;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        if (!(u[i] > 0.0)) r.positive = false;
    }
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (!(u[i + 1] < u[i])) r.monotone = false;
    }
}

void record_quadratic(SolveReport& r) {
    const auto& h = r.residual_history;
    if (h.size() < 2) return;
    double c = 0.0;
    const std::size_t first = h.size() >= 4 ? h.size() - 4 : 0;
    for (std::size_t k = first; k + 1 < h.size(); ++k) {
        if (h[k] > 0.0) c = std::max(c, h[k + 1] / (h[k] * h[k]));
    }
    r.quadratic_constant = c;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::pair<FrontProfile, SolveReport> solve(const FrontProfile& initial, const BoundaryClosure& bc,
                                           const SolverConfig& cfg) {
    cfg.validate();
    FrontProfile p = initial;
    p.converged = false;
    SolveReport report;

    std::vector<double> f = residual(p, bc);
    double r = max_norm(f);
    report.residual_history.push_back(r);

    while (true) {
        if (r <= cfg.tol_residual) {
            report.converged = true;
            break;
        }
        if (report.iterations >= cfg.max_iter) {
            report.final_residual = r;
            throw SolverError(SolverError::Kind::max_iter,
                              "newton: no convergence in " + std::to_string(cfg.max_iter) +
                                  " iterations (residual " + std::to_string(r) + ")",
                              report);
        }
        const BandedLU lu(jacobian(p, bc));
        for (double& v : f) v = -v;
        const std::vector<double> delta = lu.solve(f);

        double lambda = 1.0;
        FrontProfile trial = p;
        std::vector<double> f_trial;
        double r_trial = 0.0;
        while (true) {
            for (std::size_t i = 0; i < p.u.size(); ++i) trial.u[i] = p.u[i] + lambda * delta[i];
            if (cfg.positivity_clip) {
                for (std::size_t i = 1; i + 1 < trial.u.size(); ++i) trial.u[i] = std::max(trial.u[i], 0.0);
            }
            if (all_finite(trial.u)) {
                f_trial = residual(trial, bc);
                r_trial = max_norm(f_trial);
            } else {
                r_trial = std::numeric_limits<double>::infinity();
            }
            if (cfg.damping == Damping::none) break;
            if (r_trial <= (1.0 - 1e-4 * lambda) * r) break;
            if (lambda * cfg.backtrack < cfg.min_step) break;  // take the minimum step
            lambda *= cfg.backtrack;
        }
        if (!std::isfinite(r_trial)) {
            report.final_residual = r;
            throw SolverError(SolverError::Kind::divergence, "newton: non-finite iterate", report);
        }
        report.step_norms.push_back(lambda * max_norm(delta));
        report.step_lengths.push_back(lambda);
        if (lambda < 1.0) ++report.damped_steps;
        ++report.iterations;
        p = std::move(trial);
        f = std::move(f_trial);
        r = r_trial;
        report.residual_history.push_back(r);

        const std::size_t k = report.residual_history.size() - 1;
        if (k >= 5 && r > 10.0 * report.residual_history[k - 5]) {
            report.final_residual = r;
            throw SolverError(SolverError::Kind::divergence, "newton: residual grew 10x over 5 iterations", report);
        }
    }

    report.final_residual = r;
    record_quadratic(report);
    record_shape(p.u, report);
    p.residual_norm = r;
    p.converged = true;
    return {std::move(p), std::move(report)};
}

}  // namespace hmfront
