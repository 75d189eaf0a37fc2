#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "rangebound/errors.hpp"
#include "rangebound/grid.hpp"
#include "rangebound/path.hpp"
#include "rangebound/quadrature.hpp"

namespace rangebound {

inline constexpr Eigen::Index kDefaultOracleCeiling = 4000;

/// Grid-aligned pair of phasor-convolution components.
///
/// Unweighted (first construction):  X = sum cos(x_k - x_j) u_j dt,  Y = sum sin(x_k - x_j) u_j dt.
/// Weighted (second construction):   X = -sum sin(x_k - x_j) W_kj u_j dt,  Y = sum cos(x_k - x_j) W_kj u_j dt,
/// with W_kj = exp((I_k - I_j) / 2) and I the running integral of sigma^2.
/// Sums run over j < k, so X[0] == Y[0] == 0.
template <typename Scalar = double>
struct TransformSeries {
    TimeGrid<Scalar> grid;
    Series<Scalar> X;
    Series<Scalar> Y;
    bool weighted = false;

    Series<Scalar> modulus() const { return (X.array().square() + Y.array().square()).sqrt().matrix(); }
};

/// x reduced into [-pi, pi].
template <typename Scalar>
Scalar reduce_angle(Scalar x) {
    return std::remainder(x, Scalar(2) * std::numbers::pi_v<Scalar>);
}

/// Running integral of sigma^2 along the path (left-point).
template <typename Scalar>
Series<Scalar> sigma_sq_integral(const PathRecord<Scalar>& path) {
    return riemann_cumsum(path.sigma.cwiseAbs2(), path.grid).values;
}

/// Rotated accumulator for sum_j exp(-i x_j) exp(-I_j / 2) u_j dt.
///
/// C and S are stored relative to `scale_exponent` s: the true accumulated sums
/// are exp(-s/2) * (C, S). Once (I - s)/2 passes kRebaseExponent the accumulator
/// rebases to s = I. New terms are then weighted within [1/e, 1], so an integrand
/// that is tiny but normal stays normal once stored, and C, S track the output scale.
template <typename Scalar = double>
class PhasorAccumulator {
public:
    explicit PhasorAccumulator(bool weighted) : weighted_(weighted) {}

    Scalar C() const noexcept { return c_; }
    Scalar S() const noexcept { return s_; }
    Scalar I() const noexcept { return i_; }
    Scalar scale_exponent() const noexcept { return shift_; }

    /// Adds step j with phase (cos x_j, sin x_j), integrand u_j and volatility sigma_j.
    void push(Scalar cos_x, Scalar sin_x, Scalar u, Scalar sigma, Scalar dt) {
        Scalar w = u * dt;
        if (weighted_) {
            if (Scalar(0.5) * (i_ - shift_) > kRebaseExponent) rebase();
            w *= std::exp(Scalar(-0.5) * (i_ - shift_));
            // Same operation order as riemann_cumsum so I matches the direct route bit for bit.
            i_ = i_ + (sigma * sigma) * dt;
        }
        c_ += cos_x * w;
        s_ += sin_x * w;
    }

    /// Returns sum_{j<k} exp(i(x_k - x_j)) exp((I_k - I_j)/2) u_j dt for the current node k.
    std::complex<Scalar> rotated(Scalar cos_x, Scalar sin_x) const {
        const Scalar g = weighted_ ? std::exp(Scalar(0.5) * (i_ - shift_)) : Scalar(1);
        return {g * (cos_x * c_ + sin_x * s_), g * (sin_x * c_ - cos_x * s_)};
    }

private:
    static constexpr Scalar kRebaseExponent = Scalar(1);

    void rebase() {
        const Scalar f = std::exp(Scalar(0.5) * (i_ - shift_));
        c_ *= f;
        s_ *= f;
        shift_ = i_;
    }

    bool weighted_;
    Scalar c_ = 0, s_ = 0, i_ = 0, shift_ = 0;
};

namespace detail {

template <typename Scalar>
void guard_oracle(const PathRecord<Scalar>& path, Eigen::Index ceiling) {
    if (path.n_steps() > ceiling)
        throw OracleCeilingError("direct O(N^2) transform refused: N = " + std::to_string(path.n_steps()) +
                                 " exceeds oracle ceiling " + std::to_string(ceiling));
}

template <typename Scalar>
TransformSeries<Scalar> recursive(const PathRecord<Scalar>& path, bool weighted) {
    path.check_shape();
    const Eigen::Index n = path.n_steps();
    const Scalar dt = path.dt();
    TransformSeries<Scalar> ts{path.grid, Series<Scalar>(n + 1), Series<Scalar>(n + 1), weighted};
    ts.X[0] = ts.Y[0] = Scalar(0);

    PhasorAccumulator<Scalar> acc(weighted);
    Scalar r = reduce_angle(path.x[0]);
    Scalar cx = std::cos(r), sx = std::sin(r);
    for (Eigen::Index k = 0; k < n; ++k) {
        acc.push(cx, sx, path.u[k], path.sigma[k], dt);
        r = reduce_angle(path.x[k + 1]);
        cx = std::cos(r);
        sx = std::sin(r);
        const std::complex<Scalar> g = acc.rotated(cx, sx);
        if (weighted) {
            // i * g
            ts.X[k + 1] = -g.imag();
            ts.Y[k + 1] = g.real();
        } else {
            ts.X[k + 1] = g.real();
            ts.Y[k + 1] = g.imag();
        }
    }
    return ts;
}

}  // namespace detail

/// First construction by direct O(N^2) summation. Refused above `ceiling`.
template <typename Scalar>
TransformSeries<Scalar> transform_t1_direct(const PathRecord<Scalar>& path,
                                            Eigen::Index ceiling = kDefaultOracleCeiling) {
    path.check_shape();
    detail::guard_oracle(path, ceiling);
    const Eigen::Index n = path.n_steps();
    const Scalar dt = path.dt();
    TransformSeries<Scalar> ts{path.grid, Series<Scalar>::Zero(n + 1), Series<Scalar>::Zero(n + 1), false};
    for (Eigen::Index k = 1; k <= n; ++k) {
        Scalar xs = 0, ys = 0;
        for (Eigen::Index j = 0; j < k; ++j) {
            const Scalar d = path.x[k] - path.x[j];
            xs += std::cos(d) * path.u[j] * dt;
            ys += std::sin(d) * path.u[j] * dt;
        }
        ts.X[k] = xs;
        ts.Y[k] = ys;
    }
    return ts;
}

/// First construction in O(N) via the separable phasor recurrence.
template <typename Scalar>
TransformSeries<Scalar> transform_t1_recursive(const PathRecord<Scalar>& path) {
    return detail::recursive(path, false);
}

/// Second (sigma^2-weighted) construction by direct O(N^2) summation.
/// Each weight is exp((I_k - I_j)/2 + log(|u_j| dt)), so nothing overflows
/// unless the term itself does.
template <typename Scalar>
TransformSeries<Scalar> transform_t2_direct(const PathRecord<Scalar>& path,
                                            Eigen::Index ceiling = kDefaultOracleCeiling) {
    path.check_shape();
    detail::guard_oracle(path, ceiling);
    const Eigen::Index n = path.n_steps();
    const Series<Scalar> I = sigma_sq_integral(path);
    Series<Scalar> log_mass(n);
    for (Eigen::Index j = 0; j < n; ++j) log_mass[j] = std::log(std::abs(path.u[j])) + std::log(path.dt());
    TransformSeries<Scalar> ts{path.grid, Series<Scalar>::Zero(n + 1), Series<Scalar>::Zero(n + 1), true};
    for (Eigen::Index k = 1; k <= n; ++k) {
        Scalar xs = 0, ys = 0;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (path.u[j] == Scalar(0)) continue;
            const Scalar d = path.x[k] - path.x[j];
            const Scalar w = std::copysign(std::exp(Scalar(0.5) * (I[k] - I[j]) + log_mass[j]), path.u[j]);
            xs -= std::sin(d) * w;
            ys += std::cos(d) * w;
        }
        ts.X[k] = xs;
        ts.Y[k] = ys;
    }
    return ts;
}

/// Second construction in O(N); the accumulator rebases to stay inside double range.
template <typename Scalar>
TransformSeries<Scalar> transform_t2_recursive(const PathRecord<Scalar>& path) {
    return detail::recursive(path, true);
}

/// Both sides of  int_0^t X dx = Y(t) + 1/2 int_0^t sigma^2 Y ds  on the grid.
template <typename Scalar>
std::pair<CumulativeSeries<Scalar>, CumulativeSeries<Scalar>> identity_t1_sides(
    const PathRecord<Scalar>& path, const TransformSeries<Scalar>& ts) {
    if (ts.weighted) throw std::invalid_argument("identity_t1_sides needs unweighted transform output");
    if (!(ts.grid == path.grid)) throw std::invalid_argument("transform and path grids differ");
    const Eigen::Index n = path.n_steps();
    auto lhs = ito_cumsum(ts.X.head(n), path);
    const Series<Scalar> integrand = path.sigma.cwiseAbs2().cwiseProduct(ts.Y.head(n));
    auto drift = riemann_cumsum(integrand, path.grid);
    CumulativeSeries<Scalar> rhs{path.grid, ts.Y + Scalar(0.5) * drift.values};
    return {std::move(lhs), std::move(rhs)};
}

/// Both sides of  X~(t) = -int_0^t Y~ dx : (lhs = -ito_cumsum(Y~), rhs = X~).
template <typename Scalar>
std::pair<CumulativeSeries<Scalar>, CumulativeSeries<Scalar>> identity_t2_sides(
    const PathRecord<Scalar>& path, const TransformSeries<Scalar>& ts) {
    if (!ts.weighted) throw std::invalid_argument("identity_t2_sides needs weighted transform output");
    if (!(ts.grid == path.grid)) throw std::invalid_argument("transform and path grids differ");
    auto lhs = ito_cumsum(ts.Y.head(path.n_steps()), path);
    lhs.values = -lhs.values;
    return {std::move(lhs), CumulativeSeries<Scalar>{path.grid, ts.X}};
}

/// u_k = exp(-(I_N - I_k)/2) * psi_k, which turns the weighted construction's
/// envelope into the running integral of |psi|.
template <typename Scalar, typename D1, typename D2>
Series<Scalar> corollary_u(const Eigen::MatrixBase<D1>& psi, const Eigen::MatrixBase<D2>& sigma,
                           const TimeGrid<Scalar>& grid) {
    const Eigen::Index n = grid.n_steps();
    if (psi.size() != n || sigma.size() != n)
        throw std::invalid_argument("psi and sigma must have n_steps entries");
    const Series<Scalar> sig = sigma;
    const Series<Scalar> I = riemann_cumsum(sig.cwiseAbs2(), grid).values;
    Series<Scalar> u(n);
    for (Eigen::Index k = 0; k < n; ++k) u[k] = std::exp(Scalar(-0.5) * (I[n] - I[k])) * psi[k];
    return u;
}

/// Running bound for the unweighted construction: sum_{j<k} |u_j| dt.
template <typename Scalar>
CumulativeSeries<Scalar> t1_envelope(const PathRecord<Scalar>& path) {
    return riemann_cumsum(path.u.cwiseAbs(), path.grid);
}

/// Running bound for the weighted construction: sum_{j<k} exp((I_k - I_j)/2) |u_j| dt.
template <typename Scalar>
CumulativeSeries<Scalar> t2_envelope(const PathRecord<Scalar>& path) {
    const Eigen::Index n = path.n_steps();
    const Series<Scalar> I = sigma_sq_integral(path);
    CumulativeSeries<Scalar> env{path.grid, Series<Scalar>(n + 1)};
    env.values[0] = Scalar(0);
    for (Eigen::Index k = 0; k < n; ++k)
        env.values[k + 1] = (env.values[k] + std::abs(path.u[k]) * path.dt()) *
                            std::exp(Scalar(0.5) * (I[k + 1] - I[k]));
    return env;
}

}  // namespace rangebound
