#pragma once

// Test-only reference computations. Nothing here shares code with the
// library's transform or accumulator paths.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "rangebound/rangebound.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// sum_{j<k} exp(i(x_k - x_j)) u_j dt by complex exponentials.
inline std::vector<cplx> unweighted_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt) {
    const auto n = u.size();
    std::vector<cplx> z(n + 1, cplx{});
    for (Eigen::Index k = 1; k <= n; ++k)
        for (Eigen::Index j = 0; j < k; ++j) z[k] += std::exp(cplx(0, x[k] - x[j])) * (u[j] * dt);
    return z;
}

/// Running integral of sigma^2, accumulated with long double.
inline std::vector<long double> sigma_sq(const Eigen::VectorXd& sigma, double dt) {
    std::vector<long double> I(sigma.size() + 1, 0.0L);
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        I[k + 1] = I[k] + (long double)sigma[k] * sigma[k] * dt;
    return I;
}

/// sum_{j<k} exp(i(x_k - x_j) + (I_k - I_j)/2) u_j dt, summed in the log domain:
/// every term's log-magnitude is shifted by the row maximum before exponentiating.
inline std::vector<cplx> weighted_sum_logdomain(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                                const Eigen::VectorXd& sigma, double dt) {
    const auto n = u.size();
    const auto I = sigma_sq(sigma, dt);
    std::vector<cplx> z(n + 1, cplx{});
    std::vector<long double> logmag(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        long double top = -std::numeric_limits<long double>::infinity();
        for (Eigen::Index j = 0; j < k; ++j) {
            logmag[j] = u[j] == 0 ? -std::numeric_limits<long double>::infinity()
                                  : 0.5L * (I[k] - I[j]) + std::log((long double)std::abs(u[j]) * dt);
            top = std::max(top, logmag[j]);
        }
        if (!std::isfinite((double)top)) continue;
        std::complex<long double> acc{};
        for (Eigen::Index j = 0; j < k; ++j) {
            const long double mag = std::exp(logmag[j] - top) * (u[j] < 0 ? -1.0L : 1.0L);
            const long double th = (long double)x[k] - x[j];
            acc += std::complex<long double>(mag * std::cos(th), mag * std::sin(th));
        }
        acc *= std::exp(top);
        z[k] = cplx((double)acc.real(), (double)acc.imag());
    }
    return z;
}

/// Fine left-Riemann approximation of int_0^t f(s) ds with m panels.
template <typename F>
double fine_riemann(F f, double t, int m) {
    const double h = t / m;
    double s = 0;
    for (int i = 0; i < m; ++i) s += f(i * h) * h;
    return s;
}

/// Random coefficient spec drawn from the presets.
inline rangebound::CoefficientSpec<double> random_spec(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> U(-scale, scale);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return rangebound::CoefficientSpec<double>::constant(U(rng));
        case 1: return rangebound::CoefficientSpec<double>::sinusoidal(U(rng), U(rng), std::abs(U(rng)) + 0.1);
        default: return rangebound::CoefficientSpec<double>::state_bounded(U(rng));
    }
}

}  // namespace oracle
