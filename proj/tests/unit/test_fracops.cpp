#include "oracles.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace rieszwave;

TEST(FractionalOrder, AcceptsHalfOpenInterval) {
    EXPECT_NO_THROW(FractionalOrder(1.0000001));
    EXPECT_NO_THROW(FractionalOrder(2.0));
    EXPECT_TRUE(FractionalOrder(2.0).classical());
    EXPECT_FALSE(FractionalOrder(1.5).classical());
    EXPECT_THROW(FractionalOrder(1.0), InvalidInput);
    EXPECT_THROW(FractionalOrder(2.0000001), InvalidInput);
    EXPECT_THROW(FractionalOrder(std::nan("")), InvalidInput);
}

TEST(Weights, FrozenValuesAtOnePointFive) {
    const auto g = grunwald_g(FractionalOrder(1.5), 2);
    EXPECT_DOUBLE_EQ(g[0], 1.0);
    EXPECT_DOUBLE_EQ(g[1], -1.5);
    EXPECT_DOUBLE_EQ(g[2], 0.375);
    const auto phi = phi_weights(FractionalOrder(1.5), 2);
    EXPECT_DOUBLE_EQ(phi[0], 0.75);
    EXPECT_DOUBLE_EQ(phi[1], -0.875);
}

TEST(Weights, RecurrenceMatchesGammaBinomials) {
    for (double a : {1.2, 1.5, 1.8}) {
        const auto g = grunwald_g(FractionalOrder(a), 30);
        for (std::size_t m = 0; m <= 30; ++m) {
            const double expected = oracle::gamma_binomial_weight(a, m);
            EXPECT_NEAR(g[m], expected, 1e-12 * std::max(1.0, std::abs(expected))) << "alpha " << a << " m " << m;
        }
    }
}

TEST(Weights, ClassicalOrderGivesSecondDifference) {
    const auto phi = phi_weights(FractionalOrder(2.0), 5);
    EXPECT_DOUBLE_EQ(phi[0], 1.0);
    EXPECT_DOUBLE_EQ(phi[1], -2.0);
    EXPECT_DOUBLE_EQ(phi[2], 1.0);
    EXPECT_DOUBLE_EQ(phi[3], 0.0);
}

TEST(Weights, PhiNeedsAtLeastOneTerm) {
    EXPECT_THROW(phi_weights(FractionalOrder(1.5), 0), InvalidInput);
}

TEST(Kappa, ClassicalValueAndNearSingularDiagnostic) {
    EXPECT_DOUBLE_EQ(riesz_kappa(FractionalOrder(2.0)), -0.5);
    std::vector<std::string> messages;
    ScopedDiagnosticSink sink([&](std::string_view m) { messages.emplace_back(m); });
    riesz_kappa(FractionalOrder(1.5));
    EXPECT_TRUE(messages.empty());
    riesz_kappa(FractionalOrder(1.0 + 1e-9));
    ASSERT_EQ(messages.size(), 1u);
    EXPECT_NE(messages[0].find("kappa"), std::string::npos);
}

TEST(RieszStencil, MatchesBruteForceOneSidedSums) {
    for (double a : {1.2, 1.5, 1.8, 2.0}) {
        const std::size_t n = 12;
        const double h = 1.0 / 13.0;
        const RieszStencil s(FractionalOrder(a), h, n);
        const auto ref = oracle::riesz_operator_bruteforce(a, h, n);
        double scale = 0.0;
        for (const auto& row : ref)
            for (double v : row) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                EXPECT_NEAR(s.scale() * s.matrix()(i, l), ref[i][l], 1e-13 * scale)
                    << "alpha " << a << " (" << i << "," << l << ")";
    }
}

TEST(RieszStencil, ToeplitzStructure) {
    const RieszStencil s(FractionalOrder(1.7), 0.1, 6);
    const auto phi = s.phi();
    const DenseMatrix b = assemble_B(s);
    EXPECT_DOUBLE_EQ(b(0, 0), phi[1]);
    EXPECT_DOUBLE_EQ(b(1, 0), phi[0]);
    EXPECT_DOUBLE_EQ(b(2, 0), 0.0);
    EXPECT_DOUBLE_EQ(b(0, 3), phi[4]);
    EXPECT_DOUBLE_EQ(b(2, 5), phi[4]);
    EXPECT_EQ(assemble_A(s), s.matrix());
    EXPECT_EQ(s.matrix(), s.matrix().transpose());
}

TEST(RieszStencil, ScaleIsPositive) {
    for (double a : {1.1, 1.5, 1.9, 2.0}) EXPECT_GT(RieszStencil(FractionalOrder(a), 0.05, 4).scale(), 0.0);
}

TEST(RieszStencil, RejectsDegenerateGrids) {
    EXPECT_THROW(RieszStencil(FractionalOrder(1.5), 0.1, 1), InvalidInput);
    EXPECT_THROW(RieszStencil(FractionalOrder(1.5), 0.0, 4), InvalidInput);
    EXPECT_THROW(RieszStencil(FractionalOrder(1.5), -0.1, 4), InvalidInput);
}

TEST(ApplyRiesz, EqualsDenseProductAndHandlesAliasing) {
    const RieszStencil s(FractionalOrder(1.4), 1.0 / 11.0, 10);
    std::vector<double> u(10);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.7 * static_cast<double>(i) + 0.3);
    const auto out = apply_riesz(s, u);
    const auto dense = s.matrix().multiply(u);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(out[i], s.scale() * dense[i], 1e-12 * std::abs(out[i]) + 1e-14);

    std::vector<double> inplace = u;
    apply_riesz(s, inplace, inplace);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_DOUBLE_EQ(inplace[i], out[i]);

    std::vector<double> shorter(9);
    EXPECT_THROW(apply_riesz(s, shorter), InvalidInput);
}

TEST(ApplyRiesz, ClassicalOrderIsCentralSecondDifference) {
    const double h = 0.125;
    const RieszStencil s(FractionalOrder(2.0), h, 7);
    std::vector<double> u{0.3, -1.0, 2.0, 0.5, 0.0, 1.5, -0.25};
    const auto out = apply_riesz(s, u);
    const auto ref = oracle::second_difference(u, h);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(out[i], ref[i], 1e-12 * std::abs(ref[i]) + 1e-12);
}

TEST(ApplyRiesz, SecondOrderConsistencyAtMidpoint) {
    // Exact Riesz derivative of x²(1-x)² from the Riemann-Liouville power rule.
    auto exact = [](double a, double x) {
        const double kappa = 1.0 / (2.0 * std::cos(a * M_PI / 2.0));
        double left = oracle::rl_power(2, a, x) - 2 * oracle::rl_power(3, a, x) + oracle::rl_power(4, a, x);
        double right = oracle::rl_power(2, a, 1 - x) - 2 * oracle::rl_power(3, a, 1 - x) +
                       oracle::rl_power(4, a, 1 - x);
        return -kappa * (left + right);
    };
    for (double a : {1.2, 1.5, 1.8}) {
        std::vector<double> errors;
        for (std::size_t n_int : {64u, 128u}) {
            const Grid1D grid(1.0, n_int);
            const RieszStencil s(FractionalOrder(a), grid.h(), grid.interior_count());
            const auto r = apply_riesz(s, grid.sample(quartic_bump));
            errors.push_back(std::abs(r[n_int / 2 - 1] - exact(a, 0.5)));
        }
        EXPECT_GT(std::log2(errors[0] / errors[1]), 1.9) << "alpha " << a;
    }
}
