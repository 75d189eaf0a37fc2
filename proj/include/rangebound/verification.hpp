#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rangebound/grid.hpp"
#include "rangebound/path.hpp"
#include "rangebound/quadrature.hpp"
#include "rangebound/rotation.hpp"
#include "rangebound/transform.hpp"
#include "rangebound/wiener.hpp"

namespace rangebound {

/// Worst excess of the transform modulus over an envelope.
/// passed <=> max_violation <= tolerance_used.
template <typename Scalar = double>
struct BoundReport {
    Scalar max_violation;
    Eigen::Index violation_index;
    Scalar tolerance_used;
    bool passed;
};

struct ConvergenceReport {
    std::vector<Eigen::Index> grid_sizes;     // increasing
    std::vector<double> residual_norms;       // one per grid
    std::vector<double> estimated_orders;     // log2(r_i / r_{i+1})
    double median_order;

    /// Norms fall at every refinement.
    bool strictly_decreasing() const {
        for (std::size_t i = 0; i + 1 < residual_norms.size(); ++i)
            if (!(residual_norms[i + 1] < residual_norms[i])) return false;
        return true;
    }
};

enum class Identity { eq_y, eq_dx, remark1, remark2 };
enum class Construction { t1, t2 };

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename Scalar>
BoundReport<Scalar> check_envelope(const TransformSeries<Scalar>& ts, const CumulativeSeries<Scalar>& envelope,
                                   Scalar tolerance) {
    if (!(ts.grid == envelope.grid) || envelope.values.size() != ts.X.size())
        throw std::invalid_argument("transform and envelope grids differ");
    const Series<Scalar> excess = ts.modulus() - envelope.values;
    Eigen::Index at = 0;
    const Scalar worst = excess.maxCoeff(&at);
    return {worst, at, tolerance, worst <= tolerance};
}

template <typename D1, typename D2>
typename D1::RealScalar residual_norm(const Eigen::MatrixBase<D1>& lhs, const Eigen::MatrixBase<D2>& rhs) {
    if (lhs.size() != rhs.size()) throw std::invalid_argument("residual_norm: length mismatch");
    if (lhs.size() == 0) return 0;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar residual_norm(const CumulativeSeries<Scalar>& lhs, const CumulativeSeries<Scalar>& rhs) {
    return residual_norm(lhs.values, rhs.values);
}

/// Pairwise orders and their median from residuals on successively doubled grids.
inline ConvergenceReport make_convergence_report(std::vector<Eigen::Index> grid_sizes,
                                                 std::vector<double> residual_norms) {
    if (grid_sizes.size() != residual_norms.size() || grid_sizes.size() < 2)
        throw std::invalid_argument("need matching grid sizes and residuals for at least two grids");
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < residual_norms.size(); ++i)
        orders.push_back(std::log2(residual_norms[i] / residual_norms[i + 1]));
    const double med = median(orders);
    return {std::move(grid_sizes), std::move(residual_norms), std::move(orders), med};
}

/// Simulates `model` on `grid` from the given increments, resolving the corollary integrand.
template <typename Scalar, typename Derived>
PathRecord<Scalar> simulate_model(const ModelSpec<Scalar>& model, const TimeGrid<Scalar>& grid,
                                  const Eigen::MatrixBase<Derived>& increments, std::uint64_t seed = 0) {
    auto path = simulate_path(model.a, model.sigma, model.u, grid, increments, model.x0, seed);
    if (model.corollary) path.u = corollary_u(path.u, path.sigma, grid);
    return path;
}

/// Max-norm residual of one discretized identity on one path.
template <typename Scalar>
Scalar identity_residual(const PathRecord<Scalar>& path, Identity which) {
    switch (which) {
        case Identity::eq_y: {
            const auto [lhs, rhs] = identity_t1_sides(path, transform_t1_recursive(path));
            return residual_norm(lhs, rhs);
        }
        case Identity::eq_dx: {
            const auto [lhs, rhs] = identity_t2_sides(path, transform_t2_recursive(path));
            return residual_norm(lhs, rhs);
        }
        case Identity::remark1: {
            const auto r = remark1_rotation(path);
            return std::abs(r.lhs - r.rhs);
        }
        case Identity::remark2: {
            const auto r = remark2_rotation(path);
            return std::abs(r.lhs - r.rhs);
        }
    }
    throw std::invalid_argument("unknown identity");
}

/// Strong-error study with common random numbers: the fine increments are
/// coarsened by 2, 4, ... so every level sees the same Wiener path.
template <typename Scalar, typename Derived>
ConvergenceReport estimate_order(const Eigen::MatrixBase<Derived>& fine_increments, Scalar t_max,
                                 const ModelSpec<Scalar>& model, int levels, Identity which) {
    if (levels < 3) throw std::invalid_argument("estimate_order needs at least 3 refinement levels");
    const Eigen::Index fine_n = fine_increments.size();
    const Eigen::Index coarsest = Eigen::Index(1) << (levels - 1);
    if (fine_n == 0 || fine_n % coarsest != 0)
        throw std::invalid_argument("finest N must be divisible by 2^(levels-1)");

    std::vector<Eigen::Index> sizes;
    std::vector<double> norms;
    for (int level = levels - 1; level >= 0; --level) {
        const Eigen::Index factor = Eigen::Index(1) << level;
        const TimeGrid<Scalar> grid(t_max, fine_n / factor);
        const auto path = simulate_model(model, grid, coarsen_increments(fine_increments, factor));
        sizes.push_back(grid.n_steps());
        norms.push_back(static_cast<double>(identity_residual(path, which)));
    }
    return make_convergence_report(std::move(sizes), std::move(norms));
}

/// Max |direct - recursive| over both components and all nodes.
template <typename Scalar>
Scalar compare_oracle(const PathRecord<Scalar>& path, Construction which,
                      Eigen::Index ceiling = kDefaultOracleCeiling) {
    const bool t1 = which == Construction::t1;
    const auto direct = t1 ? transform_t1_direct(path, ceiling) : transform_t2_direct(path, ceiling);
    const auto rec = t1 ? transform_t1_recursive(path) : transform_t2_recursive(path);
    return std::max(residual_norm(direct.X, rec.X), residual_norm(direct.Y, rec.Y));
}

/// Scale for oracle tolerances: 1 + sum|u|dt, times exp(I_N/2) on the sum for
/// the weighted construction.
template <typename Scalar>
Scalar oracle_scale(const PathRecord<Scalar>& path, Construction which) {
    const Scalar mass = path.u.cwiseAbs().sum() * path.dt();
    if (which == Construction::t1) return Scalar(1) + mass;
    const Series<Scalar> I = sigma_sq_integral(path);
    return Scalar(1) + std::exp(Scalar(0.5) * I[I.size() - 1]) * mass;
}

}  // namespace rangebound
