#include "oracles.hpp"

#include "rieszwave/errors.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver2d.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace rieszwave;

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

WaveProblem2D variable_classical_2d() {
    CustomSpec2D spec;
    spec.alpha = FractionalOrder(2.0);
    spec.beta = FractionalOrder(2.0);
    spec.coefficient_x = "power:1,1,0";
    spec.coefficient_y = "exp:1,0,0.5";
    spec.displacement = "sine";
    spec.velocity = "quartic";
    auto p = custom_problem_2d(spec);
    p.source = [](double x, double y, double t) { return std::cos(2.0 * t) * x * (1.0 - y); };
    return p;
}

SolverState2D start_state(const WaveProblem2D& p, const Grid2D& g, double tau) {
    SolverState2D s;
    s.tau = tau;
    s.u_prev = Field2D(g.nx(), g.ny(), g.sample(p.initial_displacement));
    s.u_curr = first_step_2d(p, g, tau);
    return s;
}

}  // namespace

TEST(Field2D, LayoutIsXFastest) {
    Field2D f(3, 2);
    f(2, 1) = 7.0;
    EXPECT_EQ(f.values()[5], 7.0);
    EXPECT_EQ(f.x_line(1)[2], 7.0);
    EXPECT_THROW(Field2D(2, 2, std::vector<double>(3)), InvalidInput);
}

TEST(RieszLines, SeparableFieldsFactor) {
    // For u = X(x) Y(y), ∇x u = (∇X) Y and ∇y u = X (∇Y).
    const RieszStencil sx(FractionalOrder(1.3), 1.0 / 9.0, 8);
    const RieszStencil sy(FractionalOrder(1.8), 1.0 / 7.0, 6);
    std::vector<double> X(8), Y(6);
    for (std::size_t i = 0; i < 8; ++i) X[i] = std::sin(0.4 * static_cast<double>(i) + 0.1);
    for (std::size_t j = 0; j < 6; ++j) Y[j] = 1.0 + 0.3 * static_cast<double>(j);
    Field2D u(8, 6);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 8; ++i) u(i, j) = X[i] * Y[j];
    const auto dX = apply_riesz(sx, X);
    const auto dY = apply_riesz(sy, Y);
    const auto ux = apply_riesz_x(sx, u);
    const auto uy = apply_riesz_y(sy, u);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 8; ++i) {
            EXPECT_NEAR(ux(i, j), dX[i] * Y[j], 1e-12 * std::abs(dX[i] * Y[j]) + 1e-13);
            EXPECT_NEAR(uy(i, j), X[i] * dY[j], 1e-12 * std::abs(X[i] * dY[j]) + 1e-13);
        }
}

TEST(Adi, EqualsDensePerturbedSolve) {
    const auto p = example_4_2(FractionalOrder(1.3), FractionalOrder(1.7));
    const Grid2D g(1.0, 9, 1.0, 11);
    const double tau = 0.05;
    for (double theta : {0.25, 0.5, 1.0}) {
        const Scheme2D scheme(p, g, tau, Theta(theta));
        const AdiSystems adi(scheme);
        const DirectSystems2D direct(scheme);
        auto a = start_state(p, g, tau);
        auto d = a;
        for (std::size_t k = 1; k < 6; ++k) {
            const auto f = sample_source(p, g, static_cast<double>(k) * tau);
            const auto& ua = adi_step(a, adi, f);
            const auto& ud = direct_perturbed_step(d, direct, f);
            ASSERT_LE(max_diff(ua.values(), ud.values()), 1e-10 * max_abs(ud.values()))
                << "theta " << theta << " step " << k;
        }
    }
}

TEST(Adi, ClassicalReductionMatchesFactoredOracle) {
    const auto p = variable_classical_2d();
    const Grid2D g(1.0, 8, 1.0, 10);
    const double tau = 0.03;
    const auto a = sample_coefficient(p.coefficient_x, g);
    const auto b = sample_coefficient(p.coefficient_y, g);
    for (double theta : {0.25, 0.5, 1.0}) {
        const AdiSystems adi(Scheme2D(p, g, tau, Theta(theta)));
        auto s = start_state(p, g, tau);
        std::vector<double> prev(s.u_prev.values().begin(), s.u_prev.values().end());
        std::vector<double> curr(s.u_curr.values().begin(), s.u_curr.values().end());
        for (std::size_t k = 1; k < 20; ++k) {
            const auto f = sample_source(p, g, static_cast<double>(k) * tau);
            const std::vector<double> fv(f.values().begin(), f.values().end());
            const auto& ours = adi_step(s, adi, f);
            const auto ref = oracle::classical_factored_step_2d(prev, curr, a, b, fv, g.nx(), g.ny(),
                                                                g.x().h(), g.y().h(), tau, theta);
            ASSERT_LE(max_diff(ours.values(), ref), 1e-12 * max_abs(ref)) << "theta " << theta;
            prev = curr;
            curr = ref;
        }
    }
}

TEST(Unsplit, ClassicalReductionMatchesDenseOracle) {
    const auto p = variable_classical_2d();
    const Grid2D g(1.0, 7, 1.0, 6);
    const double tau = 0.04;
    const auto a = sample_coefficient(p.coefficient_x, g);
    const auto b = sample_coefficient(p.coefficient_y, g);
    const double theta = 0.5;
    const DirectSystems2D direct(Scheme2D(p, g, tau, Theta(theta)));
    auto s = start_state(p, g, tau);
    std::vector<double> prev(s.u_prev.values().begin(), s.u_prev.values().end());
    std::vector<double> curr(s.u_curr.values().begin(), s.u_curr.values().end());
    for (std::size_t k = 1; k < 10; ++k) {
        const auto f = sample_source(p, g, static_cast<double>(k) * tau);
        const std::vector<double> fv(f.values().begin(), f.values().end());
        const auto& ours = direct_unsplit_step(s, direct, f);
        const auto ref = oracle::classical_unsplit_step_2d(prev, curr, a, b, fv, g.nx(), g.ny(),
                                                           g.x().h(), g.y().h(), tau, theta);
        ASSERT_LE(max_diff(ours.values(), ref), 1e-12 * max_abs(ref));
        prev = curr;
        curr = ref;
    }
}

TEST(Splitting, PerturbationShrinksFasterThanSecondOrder) {
    // One step from exact levels: the factored and unsplit schemes differ by
    // θ²τ⁴ times a product of operators acting on a second time difference.
    const auto p = example_4_2(FractionalOrder(1.5), FractionalOrder(1.5));
    const Grid2D g(1.0, 16, 1.0, 16);
    double previous = 0.0;
    for (double tau : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0}) {
        const DirectSystems2D direct(Scheme2D(p, g, tau, Theta(0.5)));
        const auto& u = *p.exact;
        SolverState2D s1;
        s1.tau = tau;
        s1.u_prev = Field2D(g.nx(), g.ny(), g.sample([&](double x, double y) { return u(x, y, 0.0); }));
        s1.u_curr = Field2D(g.nx(), g.ny(), g.sample([&](double x, double y) { return u(x, y, tau); }));
        auto s2 = s1;
        const auto f = sample_source(p, g, tau);
        const auto& u1 = direct_perturbed_step(s1, direct, f);
        const auto& u2 = direct_unsplit_step(s2, direct, f);
        const double diff = max_diff(u1.values(), u2.values());
        if (previous > 0.0) EXPECT_GE(previous / diff, 8.0) << "tau " << tau;
        previous = diff;
    }
}

TEST(Direct, SizeGuard) {
    const RieszStencil sx(FractionalOrder(1.5), 1.0 / 80.0, 79);
    const RieszStencil sy(FractionalOrder(1.5), 1.0 / 80.0, 79);
    EXPECT_THROW(assemble_kronecker(sx, sy), InvalidInput);
}

TEST(Method, ParseAndName) {
    for (auto m : {Method2D::adi, Method2D::perturbed_direct, Method2D::unsplit_direct})
        EXPECT_EQ(parse_method_2d(method_name(m)), m);
    EXPECT_THROW(parse_method_2d("lu"), InvalidInput);
}

TEST(Solve2D, MethodsAgreeAndRecordLevels) {
    const auto p = constcoef_forced_2d(FractionalOrder(1.4), FractionalOrder(1.6));
    const Grid2D g(1.0, 10, 1.0, 10);
    SolveOptions2D options;
    options.keep_trajectory = true;
    const auto adi = solve_2d(p, g, 0.05, Theta(0.5), options);
    ASSERT_EQ(adi.trajectory.size(), adi.steps + 1);
    options.method = Method2D::perturbed_direct;
    const auto dir = solve_2d(p, g, 0.05, Theta(0.5), options);
    EXPECT_LE(max_diff(adi.final_field.values(), dir.final_field.values()),
              1e-10 * max_abs(dir.final_field.values()));
}

TEST(Solve2D, StableAtLargeSteps) {
    const auto p = constcoef_free_2d(FractionalOrder(1.5), FractionalOrder(1.8));
    const Grid2D g(1.0, 20, 1.0, 20);
    const double tau = 0.2;
    const double initial = max_abs(g.sample(p.initial_displacement));
    for (double theta : {0.25, 1.0}) {
        SolveOptions2D options;
        options.final_time = 100.0 * tau;
        double worst = 0.0;
        options.observer = [&](std::size_t, const Field2D& u) { worst = std::max(worst, max_abs(u.values())); };
        solve_2d(p, g, tau, Theta(theta), options);
        EXPECT_LE(worst, 10.0 * initial) << "theta " << theta;
    }
}
