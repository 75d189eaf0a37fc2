#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>

#include "rangebound/errors.hpp"
#include "rangebound/path.hpp"
#include "rangebound/transform.hpp"

namespace rangebound {

template <typename Scalar>
using ComplexSeries = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Unit-modulus rotation integrand U_k = exp(i(x_k - x_0)) of a driftless path.
///
/// lhs = i * sum sigma_k U_k dw_k and rhs = U_N - 1 + 1/2 sum sigma_k^2 U_k dt agree
/// up to discretization error; |rhs| <= bound = 2 + 1/2 sum sigma_k^2 dt exactly.
template <typename Scalar = double>
struct UnitRotation {
    ComplexSeries<Scalar> U;
    std::complex<Scalar> lhs;
    std::complex<Scalar> rhs;
    Scalar bound;
};

/// Growing rotation integrand U_k = i F_k with F_k = exp(i(x_k - x_0) + I_k/2),
/// so |U_k| = exp(I_k/2). lhs = sum sigma_k U_k dw_k, rhs = F_N - 1.
template <typename Scalar = double>
struct GrowingRotation {
    ComplexSeries<Scalar> U;
    ComplexSeries<Scalar> F;
    std::complex<Scalar> lhs;
    std::complex<Scalar> rhs;
};

namespace detail {
template <typename Scalar>
void require_driftless(const PathRecord<Scalar>& path) {
    path.check_shape();
    if (!path.driftless || !(path.a.array() == Scalar(0)).all())
        throw PreconditionError("rotation integrands require an identically zero drift");
}
}  // namespace detail

template <typename Scalar>
UnitRotation<Scalar> remark1_rotation(const PathRecord<Scalar>& path) {
    detail::require_driftless(path);
    const Eigen::Index n = path.n_steps();
    const Scalar dt = path.dt();
    UnitRotation<Scalar> out{ComplexSeries<Scalar>(n + 1), {}, {}, Scalar(2)};
    for (Eigen::Index k = 0; k <= n; ++k) out.U[k] = std::polar(Scalar(1), path.x[k] - path.x[0]);

    std::complex<Scalar> stoch{}, drift{};
    Scalar quad = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        stoch += path.sigma[k] * out.U[k] * path.dw[k];
        drift += (path.sigma[k] * path.sigma[k]) * out.U[k] * dt;
        quad += (path.sigma[k] * path.sigma[k]) * dt;
    }
    out.lhs = std::complex<Scalar>(0, 1) * stoch;
    out.rhs = out.U[n] - Scalar(1) + Scalar(0.5) * drift;
    out.bound += Scalar(0.5) * quad;
    return out;
}

template <typename Scalar>
GrowingRotation<Scalar> remark2_rotation(const PathRecord<Scalar>& path) {
    detail::require_driftless(path);
    const Eigen::Index n = path.n_steps();
    const Series<Scalar> I = sigma_sq_integral(path);
    GrowingRotation<Scalar> out{ComplexSeries<Scalar>(n + 1), ComplexSeries<Scalar>(n + 1), {}, {}};
    for (Eigen::Index k = 0; k <= n; ++k) {
        out.F[k] = std::polar(std::exp(Scalar(0.5) * I[k]), path.x[k] - path.x[0]);
        out.U[k] = std::complex<Scalar>(0, 1) * out.F[k];
    }
    std::complex<Scalar> stoch{};
    for (Eigen::Index k = 0; k < n; ++k) stoch += path.sigma[k] * out.U[k] * path.dw[k];
    out.lhs = stoch;
    out.rhs = out.F[n] - Scalar(1);
    return out;
}

}  // namespace rangebound
