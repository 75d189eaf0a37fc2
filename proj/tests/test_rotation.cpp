#include <doctest.h>

#include <cmath>

#include "rangebound/rangebound.hpp"

using namespace rangebound;
using Spec = CoefficientSpec<double>;

namespace {
PathRecord<double> driftless(double sigma, Eigen::Index n, std::uint64_t seed, double t_max = 5.0) {
    return simulate_seeded(Spec::constant(0), Spec::constant(sigma), Spec::constant(1), build_grid(t_max, n), seed);
}
}  // namespace

TEST_CASE("remark1_rotation: zero volatility") {
    const auto r = remark1_rotation(driftless(0, 100, 1));
    CHECK((r.U.array() == std::complex<double>(1, 0)).all());
    CHECK(r.lhs == std::complex<double>(0, 0));
    CHECK(r.rhs == std::complex<double>(0, 0));
    CHECK(r.bound == 2.0);
}

TEST_CASE("remark1_rotation: unit modulus, bound 4.5, rhs inside the bound") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = remark1_rotation(driftless(1, 20000, seed));
        CHECK(r.bound == doctest::Approx(4.5).epsilon(1e-12));
        CHECK((r.U.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-15);
        CHECK(std::abs(r.rhs) <= 4.5 + 1e-9);
    }
}

TEST_CASE("remark1_rotation: x0 does not matter") {
    const auto g = build_grid(5.0, 1000);
    const auto p0 = simulate_seeded(Spec::constant(0), Spec::constant(1), Spec::constant(1), g, 3, 0.0);
    const auto p1 = simulate_seeded(Spec::constant(0), Spec::constant(1), Spec::constant(1), g, 3, 1.7);
    const auto r0 = remark1_rotation(p0), r1 = remark1_rotation(p1);
    CHECK(std::abs(r0.rhs - r1.rhs) <= 1e-12);
    CHECK(std::abs(r0.lhs - r1.lhs) <= 1e-12);
}

TEST_CASE("remark2_rotation: zero volatility") {
    const auto r = remark2_rotation(driftless(0, 100, 1));
    CHECK((r.F.array() == std::complex<double>(1, 0)).all());
    CHECK(r.lhs == std::complex<double>(0, 0));
    CHECK(r.rhs == std::complex<double>(0, 0));
}

TEST_CASE("remark2_rotation: modulus grows as exp(I/2)") {
    const auto p = driftless(1, 10000, 4);
    const auto r = remark2_rotation(p);
    CHECK(std::abs(r.F[p.n_steps()]) == doctest::Approx(std::exp(2.5)).epsilon(1e-10));
    CHECK(std::abs(r.F[p.n_steps()]) == doctest::Approx(12.1825).epsilon(1e-5));
    const Eigen::VectorXd I = sigma_sq_integral(p);
    for (Eigen::Index k = 0; k <= p.n_steps(); k += 997)
        CHECK(std::abs(r.U[k]) == doctest::Approx(std::exp(0.5 * I[k])).epsilon(1e-12));
}

TEST_CASE("rotation residuals shrink with the grid (median over seeds)") {
    const ModelSpec<double> model{Spec::constant(0), Spec::constant(1), Spec::constant(1)};
    for (Identity id : {Identity::remark1, Identity::remark2}) {
        std::vector<double> orders;
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto g = build_grid(5.0, 1 << 14);
            const Eigen::VectorXd dw = sample_wiener(g, seed);
            const double fine = identity_residual(simulate_model(model, g, dw), id);
            const double coarse = identity_residual(simulate_model(model, g.coarsened(4), coarsen_increments(dw, 4)), id);
            orders.push_back(0.5 * std::log2(coarse / fine));
        }
        CHECK(median(orders) >= 0.4);
    }
}

TEST_CASE("rotations refuse paths with drift") {
    const auto p = simulate_seeded(Spec::constant(2), Spec::constant(1), Spec::constant(1), build_grid(1.0, 10), 1);
    CHECK_THROWS_AS(remark1_rotation(p), PreconditionError);
    CHECK_THROWS_AS(remark2_rotation(p), PreconditionError);
    const auto s = simulate_seeded(Spec::sinusoidal(0, 1, 2), Spec::constant(1), Spec::constant(1), build_grid(1.0, 10), 1);
    CHECK_THROWS_AS(remark1_rotation(s), PreconditionError);
}
