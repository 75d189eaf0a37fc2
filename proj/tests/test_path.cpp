#include <doctest.h>

#include <cmath>
#include <limits>

#include "rangebound/path.hpp"

using namespace rangebound;
using Spec = CoefficientSpec<double>;

TEST_CASE("simulate_path: constant path when a = sigma = 0") {
    const auto g = build_grid(5.0, 100);
    const auto p = simulate_seeded(Spec::constant(0), Spec::constant(0), Spec::constant(1), g, 3, 1.0);
    CHECK((p.x.array() == 1.0).all());
    CHECK(p.driftless);
}

TEST_CASE("simulate_path: pure drift reaches a*T") {
    const auto g = build_grid(5.0, 100000);
    const auto p = simulate_seeded(Spec::constant(2), Spec::constant(0), Spec::constant(1), g, 1);
    CHECK(p.x[p.x.size() - 1] == doctest::Approx(10.0).epsilon(1e-10));
    double worst = 0;
    for (Eigen::Index k = 0; k <= g.n_steps(); ++k) worst = std::max(worst, std::abs(p.x[k] - 2.0 * g.node(k)));
    CHECK(worst <= 1e5 * std::numeric_limits<double>::epsilon() * 10.0);
    CHECK_FALSE(p.driftless);
}

TEST_CASE("simulate_path: record is self-consistent and shaped") {
    const auto g = build_grid(5.0, 1000);
    const auto p = simulate_seeded(Spec::sinusoidal(0.5, 1.0, 3.0), Spec::state_bounded(1.5), Spec::constant(1), g, 11, -0.3);
    CHECK_NOTHROW(p.check_shape());
    CHECK(p.x.size() == 1001);
    CHECK(p.dw.size() == 1000);
    CHECK(p.x[0] == -0.3);
    for (Eigen::Index k = 0; k < g.n_steps(); ++k) {
        CHECK(p.x[k + 1] == p.x[k] + p.a[k] * g.dt() + p.sigma[k] * p.dw[k]);
        CHECK(p.a[k] == 0.5 + std::sin(3.0 * g.node(k)));
        CHECK(p.sigma[k] == 1.5 / (1.0 + p.x[k] * p.x[k]));
    }
}

TEST_CASE("simulate_path: bit-identical reruns") {
    const auto g = build_grid(5.0, 5000);
    const auto p1 = simulate_seeded(Spec::constant(2), Spec::constant(1), Spec::constant(1), g, 77);
    const auto p2 = simulate_seeded(Spec::constant(2), Spec::constant(1), Spec::constant(1), g, 77);
    CHECK(p1.x == p2.x);
    CHECK(p1.dw == p2.dw);
}

TEST_CASE("simulate_path: paper figure setup") {
    const auto g = build_grid(5.0, 100000);
    const auto p = simulate_seeded(Spec::constant(2), Spec::constant(1), Spec::constant(1), g, 1);
    // x(T) = 2T + w(T); w(T) ~ N(0, 5)
    CHECK(std::abs(p.x[g.n_steps()] - 10.0) < 5.0 * std::sqrt(5.0));
}

TEST_CASE("simulate_path: errors") {
    const auto g = build_grid(1.0, 10);
    CHECK_THROWS_AS(simulate_path(Spec::constant(0), Spec::constant(1), Spec::constant(1), g, Eigen::VectorXd::Zero(9)),
                    std::invalid_argument);
    const auto bad = Spec::samples(Eigen::VectorXd::Ones(7));
    CHECK_THROWS_AS(simulate_path(bad, Spec::constant(1), Spec::constant(1), g, Eigen::VectorXd::Zero(10)), ConfigError);
    const auto good = Spec::samples(Eigen::VectorXd::LinSpaced(10, 0, 1));
    const auto p = simulate_path(good, Spec::constant(0), Spec::constant(1), g, Eigen::VectorXd::Zero(10));
    CHECK(p.a == Eigen::VectorXd::LinSpaced(10, 0, 1));
}

TEST_CASE("coefficients: identically_zero") {
    CHECK(Spec::constant(0).identically_zero());
    CHECK_FALSE(Spec::constant(1e-300).identically_zero());
    CHECK(Spec::sinusoidal(0, 3, 0).identically_zero());
    CHECK_FALSE(Spec::sinusoidal(0, 3, 1).identically_zero());
    CHECK(Spec::state_bounded(0).identically_zero());
    CHECK(Spec::samples(Eigen::VectorXd::Zero(4)).identically_zero());
}

TEST_CASE("statistical sanity: mean of x(T) over 1000 driftless paths") {
    const auto g = build_grid(5.0, 200);
    const int batch = 1000;
    double sum = 0;
    for (int i = 0; i < batch; ++i)
        sum += simulate_seeded(Spec::constant(0), Spec::constant(1), Spec::constant(1), g, 1000 + i).x[g.n_steps()];
    CHECK(std::abs(sum / batch) <= 4.0 * std::sqrt(5.0) / std::sqrt(double(batch)));
}
