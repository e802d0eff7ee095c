#include "oracles.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"
#include "rieszwave/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace rieszwave;

namespace {

// Riesz derivative of the quartic bump assembled from Riemann-Liouville power rules.
double bump_riesz(double a, double x) {
    const double kappa = 1.0 / (2.0 * std::cos(a * std::numbers::pi / 2.0));
    auto one_side = [a](double s) {
        return oracle::rl_power(2, a, s) - 2.0 * oracle::rl_power(3, a, s) + oracle::rl_power(4, a, s);
    };
    return -kappa * (one_side(x) + one_side(1.0 - x));
}

}  // namespace

TEST(Grid1D, NodesAndSampling) {
    const Grid1D g(2.0, 4);
    EXPECT_DOUBLE_EQ(g.h(), 0.5);
    EXPECT_EQ(g.interior_count(), 3u);
    EXPECT_DOUBLE_EQ(g.node(4), 2.0);
    const auto s = g.sample([](double x) { return x; });
    EXPECT_EQ(s, (std::vector<double>{0.5, 1.0, 1.5}));
    EXPECT_THROW(Grid1D(1.0, 1), InvalidInput);
    EXPECT_THROW(Grid1D(0.0, 4), InvalidInput);
}

TEST(Grid2D, SamplesXFastest) {
    const Grid2D g(1.0, 3, 1.0, 4);
    EXPECT_EQ(g.nx(), 2u);
    EXPECT_EQ(g.ny(), 3u);
    const auto s = g.sample([](double x, double y) { return 10.0 * x + y; });
    ASSERT_EQ(s.size(), 6u);
    EXPECT_DOUBLE_EQ(s[1], 10.0 * (2.0 / 3.0) + 0.25);
    EXPECT_DOUBLE_EQ(s[2], 10.0 / 3.0 + 0.5);
}

TEST(Gamma, FrozenValueAndDomain) {
    EXPECT_NEAR(gamma_fn(3.5), 3.3233509704478426, 1e-15);
    EXPECT_THROW(gamma_fn(0.0), InvalidInput);
    EXPECT_THROW(gamma_fn(-1.5), InvalidInput);
}

TEST(RieszBracket, MatchesPowerRuleOracle) {
    for (double a : {1.2, 1.5, 1.9})
        for (double x : {0.1, 0.37, 0.5, 0.83})
            EXPECT_NEAR(riesz_poly_bracket(FractionalOrder(a), x), bump_riesz(a, x),
                        1e-12 * std::max(1.0, std::abs(bump_riesz(a, x))));
    EXPECT_THROW(riesz_poly_bracket(FractionalOrder(1.5), 1.1), InvalidInput);
}

TEST(Example41, ManufacturedSolutionIsConsistent) {
    const double a = 1.4;
    const auto p = example_4_1(FractionalOrder(a));
    ASSERT_TRUE(p.exact.has_value());
    for (double x : {0.2, 0.5, 0.9}) {
        EXPECT_DOUBLE_EQ(p.initial_displacement(x), (*p.exact)(x, 0.0));
        EXPECT_DOUBLE_EQ(p.initial_velocity(x), -quartic_bump(x));
        for (double t : {0.0, 0.6}) {
            // u_tt = e^{-t} X and u_tt = a R(u) + f.
            const double utt = std::exp(-t) * quartic_bump(x);
            const double expected_f = utt - std::pow(x, a) * std::exp(-t) * bump_riesz(a, x);
            EXPECT_NEAR(p.source(x, t), expected_f, 1e-12);
        }
    }
    EXPECT_DOUBLE_EQ(p.final_time, 1.0);
}

TEST(Example42, ManufacturedSolutionIsConsistent) {
    const double a = 1.3, b = 1.7;
    const auto p = example_4_2(FractionalOrder(a), FractionalOrder(b));
    ASSERT_TRUE(p.exact.has_value());
    EXPECT_DOUBLE_EQ(p.final_time, 0.5);
    const double x = 0.3, y = 0.6, t = 0.2;
    const double X = quartic_bump(x), Y = quartic_bump(y), s = std::sin(t + 1.0);
    const double utt = -s * X * Y;
    const double expected = utt - std::pow(x, a) * y * s * bump_riesz(a, x) * Y -
                            x * std::pow(y, b) * s * X * bump_riesz(b, y);
    EXPECT_NEAR(p.source(x, y, t), expected, 1e-12);
    EXPECT_NEAR((*p.exact)(x, y, 0.0), p.initial_displacement(x, y), 1e-15);
    EXPECT_NEAR(p.initial_velocity(x, y), std::cos(1.0) * X * Y, 1e-15);
    EXPECT_DOUBLE_EQ(p.coefficient_x(x, y), std::pow(x, a) * y);
    EXPECT_DOUBLE_EQ(p.coefficient_y(x, y), x * std::pow(y, b));
}

TEST(Catalog, LookupAndRejections) {
    for (const auto& name : builtin_problem_names_1d())
        EXPECT_EQ(make_problem_1d(name, FractionalOrder(1.5)).id, name);
    for (const auto& name : builtin_problem_names_2d())
        EXPECT_EQ(make_problem_2d(name, FractionalOrder(1.5), FractionalOrder(1.5)).id, name);
    EXPECT_THROW(make_problem_1d("nope", FractionalOrder(1.5)), InvalidInput);
    EXPECT_THROW(make_problem_2d("example41", FractionalOrder(1.5), FractionalOrder(1.5)), InvalidInput);
    EXPECT_THROW(make_problem_1d("example41", FractionalOrder(2.0)), InvalidInput);
    EXPECT_TRUE(make_problem_1d("classical", FractionalOrder(1.3)).alpha.classical());
}

TEST(Classical, ExactSolutionsSolveTheWaveEquation) {
    const auto p = classical_1d();
    const double x = 0.3, t = 0.4, e = 1e-4;
    const auto& u = *p.exact;
    const double utt = (u(x, t + e) - 2 * u(x, t) + u(x, t - e)) / (e * e);
    const double uxx = (u(x + e, t) - 2 * u(x, t) + u(x - e, t)) / (e * e);
    EXPECT_NEAR(utt, uxx, 1e-5);

    const auto q = classical_2d();
    const auto& v = *q.exact;
    const double y = 0.7;
    const double vtt = (v(x, y, t + e) - 2 * v(x, y, t) + v(x, y, t - e)) / (e * e);
    const double vxx = (v(x + e, y, t) - 2 * v(x, y, t) + v(x - e, y, t)) / (e * e);
    const double vyy = (v(x, y + e, t) - 2 * v(x, y, t) + v(x, y - e, t)) / (e * e);
    EXPECT_NEAR(vtt, vxx + vyy, 1e-5);
}

TEST(CoefficientForms, OneDimensional) {
    EXPECT_DOUBLE_EQ(parse_coefficient_1d("const:2.5")(0.3), 2.5);
    EXPECT_DOUBLE_EQ(parse_coefficient_1d("poly:1,2,3")(2.0), 17.0);
    EXPECT_DOUBLE_EQ(parse_coefficient_1d("power:2,3")(2.0), 16.0);
    EXPECT_DOUBLE_EQ(parse_coefficient_1d("exp:3,0.5")(0.0), 3.0);
    for (const char* bad : {"const", "const:a", "cubic:1", "power:1", "poly:", ""})
        EXPECT_THROW(parse_coefficient_1d(bad), InvalidInput) << bad;
}

TEST(CoefficientForms, TwoDimensional) {
    EXPECT_DOUBLE_EQ(parse_coefficient_2d("const:1.5")(0.1, 0.2), 1.5);
    EXPECT_DOUBLE_EQ(parse_coefficient_2d("power:2,1,2")(2.0, 3.0), 36.0);
    EXPECT_DOUBLE_EQ(parse_coefficient_2d("exp:1,0,0")(0.5, 0.5), 1.0);
    EXPECT_THROW(parse_coefficient_2d("poly:1,2"), InvalidInput);
}

TEST(Profiles, NamedShapes) {
    EXPECT_DOUBLE_EQ(named_profile_1d("zero", 1.0)(0.4), 0.0);
    EXPECT_DOUBLE_EQ(named_profile_1d("quartic", 2.0)(1.0), 0.0625);
    EXPECT_NEAR(named_profile_1d("sine", 2.0)(1.0), 1.0, 1e-15);
    EXPECT_NEAR(named_profile_2d("sine", 1.0, 1.0)(0.5, 0.5), 1.0, 1e-15);
    EXPECT_THROW(named_profile_1d("gauss", 1.0), InvalidInput);
}

TEST(CustomProblems, AssembleFromForms) {
    CustomSpec1D spec;
    spec.alpha = FractionalOrder(1.7);
    spec.coefficient = "poly:1,1";
    spec.displacement = "sine";
    const auto p = custom_problem_1d(spec);
    EXPECT_FALSE(p.exact.has_value());
    EXPECT_DOUBLE_EQ(p.source(0.3, 0.2), 0.0);
    EXPECT_DOUBLE_EQ(p.coefficient(0.5), 1.5);
    spec.final_time = 0.0;
    EXPECT_THROW(custom_problem_1d(spec), InvalidInput);

    CustomSpec2D spec2;
    spec2.coefficient_y = "power:1,1,0";
    const auto q = custom_problem_2d(spec2);
    EXPECT_DOUBLE_EQ(q.coefficient_y(0.25, 0.9), 0.25);
}

TEST(SampleCoefficient, RejectsNegativeAndWarnsOnZero) {
    const Grid1D g(1.0, 4);
    EXPECT_THROW(sample_coefficient([](double x) { return x - 0.5; }, g), InvalidInput);
    EXPECT_THROW(sample_coefficient([](double) { return std::nan(""); }, g), InvalidInput);
    std::vector<std::string> messages;
    ScopedDiagnosticSink sink([&](std::string_view m) { messages.emplace_back(m); });
    const auto s = sample_coefficient([](double x) { return x == 0.5 ? 0.0 : 1.0; }, g);
    EXPECT_EQ(s[1], 0.0);
    EXPECT_FALSE(messages.empty());

    const Grid2D g2(1.0, 3, 1.0, 3);
    EXPECT_THROW(sample_coefficient([](double, double) { return -1.0; }, g2), InvalidInput);
}
