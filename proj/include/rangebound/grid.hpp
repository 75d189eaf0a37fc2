#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>

#include "rangebound/errors.hpp"

namespace rangebound {

template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniform discretization of [0, t_max] into n_steps intervals.
///
/// Node k sits at k * dt, except the last node which is pinned to t_max so the
/// horizon is hit exactly regardless of how dt rounds.
template <typename Scalar = double>
class TimeGrid {
public:
    TimeGrid(Scalar t_max, Eigen::Index n_steps) : t_max_(t_max), n_steps_(n_steps) {
        if (!(t_max > Scalar(0)))
            throw std::invalid_argument("t_max must be > 0");
        if (n_steps < 1)
            throw std::invalid_argument("n_steps must be >= 1");
        dt_ = t_max_ / Scalar(n_steps_);
    }

    Scalar t_max() const noexcept { return t_max_; }
    Eigen::Index n_steps() const noexcept { return n_steps_; }
    Eigen::Index n_nodes() const noexcept { return n_steps_ + 1; }
    Scalar dt() const noexcept { return dt_; }

    Scalar node(Eigen::Index k) const noexcept {
        return k == n_steps_ ? t_max_ : Scalar(k) * dt_;
    }

    Series<Scalar> nodes() const {
        Series<Scalar> t(n_nodes());
        for (Eigen::Index k = 0; k < n_nodes(); ++k) t[k] = node(k);
        return t;
    }

    /// Grid with the same horizon and n_steps / factor intervals.
    TimeGrid coarsened(Eigen::Index factor) const {
        if (factor < 1 || n_steps_ % factor != 0)
            throw std::invalid_argument("coarsening factor must divide n_steps");
        return TimeGrid(t_max_, n_steps_ / factor);
    }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.t_max_ == b.t_max_ && a.n_steps_ == b.n_steps_;
    }

private:
    Scalar t_max_;
    Eigen::Index n_steps_;
    Scalar dt_;
};

template <typename Scalar>
TimeGrid<Scalar> build_grid(Scalar t_max, Eigen::Index n_steps) {
    return TimeGrid<Scalar>(t_max, n_steps);
}

}  // namespace rangebound
