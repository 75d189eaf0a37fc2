#pragma once

#include <Eigen/Core>

#include <stdexcept>

#include "rangebound/grid.hpp"
#include "rangebound/path.hpp"

namespace rangebound {

/// Running integral on a grid; values[0] == 0 and values has N+1 entries.
template <typename Scalar = double>
struct CumulativeSeries {
    TimeGrid<Scalar> grid;
    Series<Scalar> values;

    Scalar operator[](Eigen::Index k) const { return values[k]; }
    Scalar back() const { return values[values.size() - 1]; }
};

// Both sums evaluate the integrand at the left node of each step.

/// v[k+1] = v[k] + f[k] * (x[k+1] - x[k])
template <typename Scalar, typename Derived>
CumulativeSeries<Scalar> ito_cumsum(const Eigen::MatrixBase<Derived>& integrand,
                                    const PathRecord<Scalar>& path) {
    const Eigen::Index n = path.n_steps();
    if (integrand.size() != n)
        throw std::invalid_argument("integrand length must equal n_steps");
    CumulativeSeries<Scalar> out{path.grid, Series<Scalar>(n + 1)};
    out.values[0] = Scalar(0);
    for (Eigen::Index k = 0; k < n; ++k)
        out.values[k + 1] = out.values[k] + integrand[k] * (path.x[k + 1] - path.x[k]);
    return out;
}

/// v[k+1] = v[k] + f[k] * dt
template <typename Scalar, typename Derived>
CumulativeSeries<Scalar> riemann_cumsum(const Eigen::MatrixBase<Derived>& integrand,
                                        const TimeGrid<Scalar>& grid) {
    const Eigen::Index n = grid.n_steps();
    if (integrand.size() != n)
        throw std::invalid_argument("integrand length must equal n_steps");
    CumulativeSeries<Scalar> out{grid, Series<Scalar>(n + 1)};
    const Scalar dt = grid.dt();
    out.values[0] = Scalar(0);
    for (Eigen::Index k = 0; k < n; ++k) out.values[k + 1] = out.values[k] + integrand[k] * dt;
    return out;
}

}  // namespace rangebound
