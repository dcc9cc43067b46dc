#include "hmfront/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hmfront {

std::vector<double> build_potential(const FrontProfile& p) {
    if (p.u.size() != p.grid.size()) throw std::invalid_argument("build_potential: malformed profile");
    std::vector<double> v(p.u.size());
    const double shift = 0.25 * p.c * p.c;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.ramp(p.grid.x(i)) + shift + 3.0 * p.u[i] * p.u[i];
    return v;
}

BandedMatrix conjugated_operator(const Grid& g, std::span<const double> v) {
    if (v.size() != g.size()) throw std::invalid_argument("conjugated_operator: length mismatch");
    const std::size_t m = g.size() - 2;
    const double ih2 = 1.0 / (g.h() * g.h());
    BandedMatrix a(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
        a.at(r, r) = -2.0 * ih2 - v[r + 1];
        if (r > 0) a.at(r, r - 1) = ih2;
        if (r + 1 < m) a.at(r, r + 1) = ih2;
    }
    return a;
}

SpectrumReport leading_eigenvalues_for_potential(const Grid& g, std::span<const double> v, int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("leading_eigenvalues: k must lie in [1, 10]");
    const BandedMatrix a = conjugated_operator(g, v);
    const auto m = static_cast<lapack_int>(a.rows());
    if (k > m) throw std::invalid_argument("leading_eigenvalues: k exceeds the number of interior nodes");
    const double anorm = a.norm_inf();

    std::vector<double> d(static_cast<std::size_t>(m)), e(static_cast<std::size_t>(m - 1));
    for (lapack_int r = 0; r < m; ++r) d[r] = a(r, r);
    for (lapack_int r = 0; r + 1 < m; ++r) {
        const double up = a(r, r + 1), lo = a(r + 1, r);
        if (std::abs(up - lo) > 1e-14 * anorm) throw SpectrumError("conjugated operator is not symmetric");
        e[r] = up;
    }

    lapack_int found = 0, nsplit = 0;
    std::vector<double> w(static_cast<std::size_t>(m));
    std::vector<lapack_int> iblock(static_cast<std::size_t>(m)), isplit(static_cast<std::size_t>(m));
    const double abstol = 2.0 * std::numeric_limits<double>::min();
    lapack_int info = LAPACKE_dstebz('I', 'B', m, 0.0, 0.0, m - k + 1, m, abstol, d.data(), e.data(), &found, &nsplit,
                                     w.data(), iblock.data(), isplit.data());
    if (info != 0 || found != k) throw SpectrumError("dstebz failed (info " + std::to_string(info) + ")");

    std::vector<double> z(static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
    std::vector<lapack_int> ifail(static_cast<std::size_t>(k));
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, m, d.data(), e.data(), found, w.data(), iblock.data(), isplit.data(),
                          z.data(), m, ifail.data());
    if (info != 0) throw SpectrumError("dstein failed to converge (info " + std::to_string(info) + ")");

    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return w[x] > w[y]; });

    SpectrumReport rep;
    for (int j : order) {
        const double lambda = w[j];
        std::span<const double> vec(z.data() + static_cast<std::size_t>(j) * m, static_cast<std::size_t>(m));
        const std::vector<double> mv = a.apply(vec);
        double res = 0.0, vmax = 0.0;
        for (lapack_int r = 0; r < m; ++r) {
            res = std::max(res, std::abs(mv[r] - lambda * vec[r]));
            vmax = std::max(vmax, std::abs(vec[r]));
        }
        const double rel = res / (anorm * vmax);
        rep.max_rayleigh_residual = std::max(rep.max_rayleigh_residual, rel);
        rep.eigenvalues.push_back(lambda);
    }
    if (rep.max_rayleigh_residual > 1e-10) throw SpectrumError("eigenvector residual above 1e-10");

    // Ground state with its largest-magnitude entry scaled to +1.
    const double* g0 = z.data() + static_cast<std::size_t>(order[0]) * m;
    double big = 0.0;
    for (lapack_int r = 0; r < m; ++r) {
        if (std::abs(g0[r]) > std::abs(big)) big = g0[r];
    }
    rep.ground_state.assign(g.size(), 0.0);
    rep.ground_state_min = std::numeric_limits<double>::infinity();
    for (lapack_int r = 0; r < m; ++r) {
        rep.ground_state[static_cast<std::size_t>(r) + 1] = g0[r] / big;
        rep.ground_state_min = std::min(rep.ground_state_min, g0[r] / big);
    }

    const auto it = std::min_element(v.begin(), v.end());
    rep.potential_min = *it;
    rep.potential_argmin = g.x(static_cast<std::size_t>(it - v.begin()));
    return rep;
}

SpectrumReport leading_eigenvalues(const FrontProfile& p, int k) {
    const std::vector<double> v = build_potential(p);
    SpectrumReport rep = leading_eigenvalues_for_potential(p.grid, v, k);
    rep.c = p.c;
    return rep;
}

}  // namespace hmfront
