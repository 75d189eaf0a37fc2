#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <type_traits>
#include <variant>

#include "rangebound/errors.hpp"
#include "rangebound/grid.hpp"

namespace rangebound {

// Coefficient presets. Each one is bounded on any finite horizon and reads at
// most (t_k, x_k) at step k, so sampled series stay non-anticipating.

template <typename Scalar>
struct Constant {
    Scalar c{};
};

/// c0 + c1 * sin(omega * t)
template <typename Scalar>
struct Sinusoidal {
    Scalar c0{}, c1{}, omega{};
};

/// c / (1 + x^2)
template <typename Scalar>
struct StateBounded {
    Scalar c{};
};

/// Explicit per-step values; entry k is used on step k.
template <typename Scalar>
struct GridSamples {
    Series<Scalar> values;
};

template <typename Scalar = double>
class CoefficientSpec {
public:
    using Variant = std::variant<Constant<Scalar>, Sinusoidal<Scalar>, StateBounded<Scalar>,
                                 GridSamples<Scalar>>;

    CoefficientSpec() : spec_(Constant<Scalar>{}) {}
    CoefficientSpec(Constant<Scalar> s) : spec_(s) {}
    CoefficientSpec(Sinusoidal<Scalar> s) : spec_(s) {}
    CoefficientSpec(StateBounded<Scalar> s) : spec_(s) {}
    CoefficientSpec(GridSamples<Scalar> s) : spec_(std::move(s)) {}

    static CoefficientSpec constant(Scalar c) { return Constant<Scalar>{c}; }
    static CoefficientSpec sinusoidal(Scalar c0, Scalar c1, Scalar omega) {
        return Sinusoidal<Scalar>{c0, c1, omega};
    }
    static CoefficientSpec state_bounded(Scalar c) { return StateBounded<Scalar>{c}; }
    static CoefficientSpec samples(Series<Scalar> values) { return GridSamples<Scalar>{std::move(values)}; }

    const Variant& variant() const noexcept { return spec_; }

    /// True when the spec evaluates to zero everywhere.
    bool identically_zero() const {
        return std::visit(
            [](const auto& s) -> bool {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Constant<Scalar>>) return s.c == Scalar(0);
                else if constexpr (std::is_same_v<T, Sinusoidal<Scalar>>)
                    return s.c0 == Scalar(0) && (s.c1 == Scalar(0) || s.omega == Scalar(0));
                else if constexpr (std::is_same_v<T, StateBounded<Scalar>>) return s.c == Scalar(0);
                else return s.values.size() == 0 || (s.values.array() == Scalar(0)).all();
            },
            spec_);
    }

    /// Throws ConfigError if the spec cannot be evaluated on `grid`.
    void validate_for(const TimeGrid<Scalar>& grid) const {
        if (const auto* g = std::get_if<GridSamples<Scalar>>(&spec_)) {
            if (g->values.size() != grid.n_steps())
                throw ConfigError("grid samples have " + std::to_string(g->values.size()) +
                                  " entries, grid has " + std::to_string(grid.n_steps()) + " steps");
            if (!g->values.allFinite()) throw ConfigError("grid samples must be finite");
        }
    }

    /// Value on step k, which starts at time t with state x.
    Scalar operator()(Eigen::Index k, Scalar t, Scalar x) const {
        return std::visit(
            [&](const auto& s) -> Scalar {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Constant<Scalar>>) return s.c;
                else if constexpr (std::is_same_v<T, Sinusoidal<Scalar>>)
                    return s.c0 + s.c1 * std::sin(s.omega * t);
                else if constexpr (std::is_same_v<T, StateBounded<Scalar>>)
                    return s.c / (Scalar(1) + x * x);
                else return s.values[k];
            },
            spec_);
    }

private:
    Variant spec_;
};

}  // namespace rangebound
