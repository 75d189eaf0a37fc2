#include <doctest.h>

#include <cmath>
#include <limits>

#include "rangebound/grid.hpp"
#include "rangebound/wiener.hpp"

using namespace rangebound;

TEST_CASE("build_grid: node layout") {
    const auto g = build_grid(5.0, 5);
    CHECK(g.dt() == 1.0);
    const Eigen::VectorXd t = g.nodes();
    REQUIRE(t.size() == 6);
    for (int k = 0; k <= 5; ++k) CHECK(t[k] == double(k));

    const auto g1 = build_grid(1.0, 1);
    CHECK(g1.nodes() == Eigen::Vector2d(0.0, 1.0));
}

TEST_CASE("build_grid: 1e5 steps on [0, 5]") {
    const auto g = build_grid(5.0, 100000);
    CHECK(g.n_steps() == 100000);
    CHECK(g.dt() == doctest::Approx(5e-5).epsilon(1e-15));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(g.n_steps()) == 5.0);
    CHECK(std::abs(g.dt() * double(g.n_steps()) - g.t_max()) <= std::numeric_limits<double>::epsilon() * 5.0);
}

TEST_CASE("build_grid: last node pinned for awkward dt") {
    const auto g = build_grid(0.7, 3);
    CHECK(g.node(3) == 0.7);
}

TEST_CASE("build_grid: rejects non-positive arguments") {
    CHECK_THROWS_AS(build_grid(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(-1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(std::nan(""), 10), std::invalid_argument);
}

TEST_CASE("sample_wiener: deterministic per seed, sensitive to seed") {
    const auto g = build_grid(5.0, 1000);
    const Eigen::VectorXd a = sample_wiener(g, 42);
    const Eigen::VectorXd b = sample_wiener(g, 42);
    const Eigen::VectorXd c = sample_wiener(g, 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("sample_wiener: counter-based, prefix stable across grid sizes") {
    // Draw k depends only on (seed, k); only the sqrt(dt) scaling changes.
    const auto g1 = build_grid(1.0, 100);
    const auto g2 = build_grid(2.0, 200);
    const Eigen::VectorXd a = sample_wiener(g1, 9);
    const Eigen::VectorXd b = sample_wiener(g2, 9);
    for (int k = 0; k < 100; ++k) CHECK(a[k] / std::sqrt(g1.dt()) == doctest::Approx(b[k] / std::sqrt(g2.dt())));
}

TEST_CASE("sample_wiener: moments at N = 1e5") {
    const auto g = build_grid(5.0, 100000);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Eigen::VectorXd dw = sample_wiener(g, seed);
        const double mean = dw.mean();
        const double var = (dw.array() - mean).square().sum() / double(dw.size() - 1);
        CHECK(std::abs(var - 5e-5) <= 0.05 * 5e-5);
        // mean of N draws with sd sqrt(dt): 4 standard errors
        CHECK(std::abs(mean) <= 4.0 * std::sqrt(5e-5 / 1e5));
    }
}

TEST_CASE("standard_normal: tail and symmetry sanity over many draws") {
    int beyond3 = 0, positive = 0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double z = standard_normal(7, std::uint64_t(k));
        beyond3 += std::abs(z) > 3.0;
        positive += z > 0;
    }
    // P(|Z| > 3) = 0.0027
    CHECK(beyond3 == doctest::Approx(0.0027 * n).epsilon(0.15));
    CHECK(positive == doctest::Approx(0.5 * n).epsilon(0.01));
}

TEST_CASE("Philox4x32-10 known-answer vector") {
    // Random123 reference: zero counter, zero key.
    const auto b = Philox4x32(0)(0);
    CHECK(b[0] == 0x6627e8d5u);
    CHECK(b[1] == 0xe169c58du);
    CHECK(b[2] == 0xbc57ac4cu);
    CHECK(b[3] == 0x9b00dbd8u);
}

TEST_CASE("coarsen_increments") {
    Eigen::Vector4d inc(0.1, 0.2, -0.3, 0.4);
    CHECK(coarsen_increments(inc, 1) == inc);
    const Eigen::VectorXd c = coarsen_increments(inc, 2);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == doctest::Approx(0.3));
    CHECK(c[1] == doctest::Approx(0.1));
    CHECK_THROWS_AS(coarsen_increments(inc, 3), std::invalid_argument);
    CHECK_THROWS_AS(coarsen_increments(inc, 0), std::invalid_argument);
}

TEST_CASE("coarsen_increments: coarse Wiener path visits the fine path's values") {
    const auto g = build_grid(1.0, 10000);
    const Eigen::VectorXd fine = sample_wiener(g, 5);
    for (int factor : {2, 4, 10}) {
        const Eigen::VectorXd coarse = coarsen_increments(fine, factor);
        double wf = 0, wc = 0, worst = 0;
        for (Eigen::Index i = 0; i < coarse.size(); ++i) {
            for (int j = 0; j < factor; ++j) wf += fine[i * factor + j];
            wc += coarse[i];
            worst = std::max(worst, std::abs(wf - wc));
        }
        // Reassociated sums: agreement to accumulated roundoff only.
        CHECK(worst <= 1e4 * std::numeric_limits<double>::epsilon() * 10.0);
    }
}
