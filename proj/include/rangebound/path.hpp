#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>

#include "rangebound/coefficients.hpp"
#include "rangebound/grid.hpp"
#include "rangebound/wiener.hpp"

namespace rangebound {

/// One Euler-Maruyama path of dx = a dt + sigma dw together with everything
/// needed to recompute it: coefficient samples are taken at the left node of
/// each step, so x[k+1] == x[k] + a[k]*dt + sigma[k]*dw[k] holds as stored.
template <typename Scalar = double>
struct PathRecord {
    TimeGrid<Scalar> grid;
    Series<Scalar> x;      // N+1 nodes
    Series<Scalar> dw;     // N steps
    Series<Scalar> a;      // N steps
    Series<Scalar> sigma;  // N steps
    Series<Scalar> u;      // N steps
    std::uint64_t seed = 0;
    bool driftless = false;  // drift spec evaluates to zero everywhere

    Eigen::Index n_steps() const noexcept { return grid.n_steps(); }
    Scalar dt() const noexcept { return grid.dt(); }

    /// Throws std::invalid_argument if the series lengths disagree with the grid.
    void check_shape() const {
        const Eigen::Index n = grid.n_steps();
        if (x.size() != n + 1 || dw.size() != n || a.size() != n || sigma.size() != n || u.size() != n)
            throw std::invalid_argument("path series lengths do not match the grid");
    }
};

template <typename Scalar, typename Derived>
PathRecord<Scalar> simulate_path(const CoefficientSpec<Scalar>& a_spec,
                                 const CoefficientSpec<Scalar>& sigma_spec,
                                 const CoefficientSpec<Scalar>& u_spec, const TimeGrid<Scalar>& grid,
                                 const Eigen::MatrixBase<Derived>& increments, Scalar x0 = Scalar(0),
                                 std::uint64_t seed = 0) {
    const Eigen::Index n = grid.n_steps();
    if (increments.size() != n)
        throw std::invalid_argument("increment count must equal n_steps");
    a_spec.validate_for(grid);
    sigma_spec.validate_for(grid);
    u_spec.validate_for(grid);

    PathRecord<Scalar> p{grid, Series<Scalar>(n + 1), increments, Series<Scalar>(n), Series<Scalar>(n),
                         Series<Scalar>(n), seed, a_spec.identically_zero()};
    const Scalar dt = grid.dt();
    p.x[0] = x0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Scalar t = grid.node(k);
        const Scalar xk = p.x[k];
        p.a[k] = a_spec(k, t, xk);
        p.sigma[k] = sigma_spec(k, t, xk);
        p.u[k] = u_spec(k, t, xk);
        p.x[k + 1] = xk + p.a[k] * dt + p.sigma[k] * p.dw[k];
    }
    return p;
}

/// Samples the increments from `seed` and simulates.
template <typename Scalar>
PathRecord<Scalar> simulate_seeded(const CoefficientSpec<Scalar>& a_spec,
                                   const CoefficientSpec<Scalar>& sigma_spec,
                                   const CoefficientSpec<Scalar>& u_spec, const TimeGrid<Scalar>& grid,
                                   std::uint64_t seed, Scalar x0 = Scalar(0)) {
    return simulate_path(a_spec, sigma_spec, u_spec, grid, sample_wiener(grid, seed), x0, seed);
}

}  // namespace rangebound

namespace rangebound {

/// Everything that determines a path except the grid and the Wiener increments.
/// With `corollary` set, `u` is read as psi and the integrand actually used is
/// corollary_u(psi, sigma) (see transform.hpp).
template <typename Scalar = double>
struct ModelSpec {
    CoefficientSpec<Scalar> a;
    CoefficientSpec<Scalar> sigma = CoefficientSpec<Scalar>::constant(Scalar(1));
    CoefficientSpec<Scalar> u = CoefficientSpec<Scalar>::constant(Scalar(1));
    Scalar x0 = Scalar(0);
    bool corollary = false;
};

}  // namespace rangebound
