#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "rangebound/grid.hpp"

namespace rangebound {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Output block k depends only on (key, k), so any increment of a path can be
/// regenerated independently of the others.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t key) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

    Block operator()(std::uint64_t counter) const noexcept {
        Block c{static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32), 0u, 0u};
        std::array<std::uint32_t, 2> k = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return c;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::array<std::uint32_t, 2> key_;
};

/// Standard normal draw number `index` of stream `seed` (Box-Muller, cosine branch).
inline double standard_normal(std::uint64_t seed, std::uint64_t index) noexcept {
    const auto block = Philox4x32(seed)(index);
    const std::uint64_t b0 = (std::uint64_t{block[0]} << 32) | block[1];
    const std::uint64_t b1 = (std::uint64_t{block[2]} << 32) | block[3];
    constexpr double kInv53 = 1.0 / 9007199254740992.0;
    const double u1 = (double(b0 >> 11) + 1.0) * kInv53;  // (0, 1]
    const double u2 = double(b1 >> 11) * kInv53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// N independent N(0, dt) increments; bit-identical for identical (grid, seed).
template <typename Scalar>
Series<Scalar> sample_wiener(const TimeGrid<Scalar>& grid, std::uint64_t seed) {
    Series<Scalar> dw(grid.n_steps());
    const double scale = std::sqrt(static_cast<double>(grid.dt()));
    for (Eigen::Index k = 0; k < dw.size(); ++k)
        dw[k] = static_cast<Scalar>(scale * standard_normal(seed, static_cast<std::uint64_t>(k)));
    return dw;
}

/// Sums each run of `factor` consecutive increments, giving the same Wiener
/// path observed on a grid `factor` times coarser.
template <typename Derived>
Series<typename Derived::Scalar> coarsen_increments(const Eigen::MatrixBase<Derived>& increments,
                                                    Eigen::Index factor) {
    using Scalar = typename Derived::Scalar;
    if (factor < 1 || increments.size() % factor != 0)
        throw std::invalid_argument("coarsening factor must divide the number of increments");
    const Eigen::Index n = increments.size() / factor;
    Series<Scalar> coarse(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar s(0);
        for (Eigen::Index j = 0; j < factor; ++j) s += increments[i * factor + j];
        coarse[i] = s;
    }
    return coarse;
}

}  // namespace rangebound
