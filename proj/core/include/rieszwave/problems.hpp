#pragma once

#include "rieszwave/fracops.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rieszwave {

/// Uniform grid on [0, x_r] with N_x subintervals; interior nodes x_i = i h,
/// i = 1..N_x-1.
class Grid1D {
public:
    /// Requires length > 0 and intervals >= 2.
    Grid1D(double length, std::size_t intervals);

    double length() const noexcept { return length_; }
    std::size_t intervals() const noexcept { return intervals_; }
    double h() const noexcept { return h_; }
    std::size_t interior_count() const noexcept { return intervals_ - 1; }
    /// x_i for i in 0..N_x.
    double node(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }

    /// Values of fn at interior nodes x_1..x_{N_x-1}.
    std::vector<double> sample(const std::function<double(double)>& fn) const;

private:
    double length_;
    std::size_t intervals_;
    double h_;
};

/// Tensor grid; interior fields are flattened x-fastest.
class Grid2D {
public:
    Grid2D(double length_x, std::size_t intervals_x, double length_y, std::size_t intervals_y);

    const Grid1D& x() const noexcept { return x_; }
    const Grid1D& y() const noexcept { return y_; }
    std::size_t nx() const noexcept { return x_.interior_count(); }
    std::size_t ny() const noexcept { return y_.interior_count(); }
    std::size_t interior_count() const noexcept { return nx() * ny(); }

    /// Values of fn(x_i, y_j), index (i-1) + (j-1) * nx.
    std::vector<double> sample(const std::function<double(double, double)>& fn) const;

private:
    Grid1D x_;
    Grid1D y_;
};

using Profile1D = std::function<double(double)>;
using SpaceTime1D = std::function<double(double, double)>;
using Profile2D = std::function<double(double, double)>;
using SpaceTime2D = std::function<double(double, double, double)>;

/// u_tt = a(x) ∂^α u/∂|x|^α + f(x,t) on (0, x_r) with zero Dirichlet data.
struct WaveProblem1D {
    std::string id;
    FractionalOrder alpha{2.0};
    double length = 1.0;
    double final_time = 1.0;
    Profile1D coefficient;
    SpaceTime1D source;
    Profile1D initial_displacement;
    Profile1D initial_velocity;
    std::optional<SpaceTime1D> exact;
};

/// u_tt = a ∂^α u/∂|x|^α + b ∂^β u/∂|y|^β + f on (0,x_r)×(0,y_r).
struct WaveProblem2D {
    std::string id;
    FractionalOrder alpha{2.0};
    FractionalOrder beta{2.0};
    double length_x = 1.0;
    double length_y = 1.0;
    double final_time = 1.0;
    Profile2D coefficient_x;
    Profile2D coefficient_y;
    SpaceTime2D source;
    Profile2D initial_displacement;
    Profile2D initial_velocity;
    std::optional<SpaceTime2D> exact;
};

/// Γ(z) for z > 0 (std::tgamma); throws InvalidInput otherwise.
double gamma_fn(double z);

/// X(x) = x^2 (1-x)^2.
double quartic_bump(double x);

/// Exact Riesz derivative ∂^α X/∂|x|^α of the quartic bump on (0,1),
/// via Riemann-Liouville power rules. Requires x in [0, 1].
double riesz_poly_bracket(FractionalOrder alpha, double x);

/// u = e^{-t} X(x), a(x) = x^α, T = 1 on (0,1).
WaveProblem1D example_4_1(FractionalOrder alpha);

/// u = sin(t+1) X(x) X(y), a = x^α y, b = x y^β, T = 1/2 on (0,1)^2.
WaveProblem2D example_4_2(FractionalOrder alpha, FractionalOrder beta);

/// a ≡ 1, f ≡ 0, φ = sin(πx), ψ = 0, T = 1. No exact solution.
WaveProblem1D constcoef_free_1d(FractionalOrder alpha);
/// a ≡ 1, u = e^{-t} X(x), T = 1.
WaveProblem1D constcoef_forced_1d(FractionalOrder alpha);
/// α = 2, a ≡ 1, u = sin(πx) cos(πt), T = 1.
WaveProblem1D classical_1d();

/// a = b ≡ 1, f ≡ 0, φ = sin(πx) sin(πy), ψ = 0, T = 1/2.
WaveProblem2D constcoef_free_2d(FractionalOrder alpha, FractionalOrder beta);
/// a = b ≡ 1, u = sin(t+1) X(x) X(y), T = 1/2.
WaveProblem2D constcoef_forced_2d(FractionalOrder alpha, FractionalOrder beta);
/// α = β = 2, a = b ≡ 1, u = sin(πx) sin(πy) cos(√2 π t), T = 1/2.
WaveProblem2D classical_2d();

/// Names accepted by make_problem_1d / make_problem_2d.
std::vector<std::string> builtin_problem_names_1d();
std::vector<std::string> builtin_problem_names_2d();

/// Built-in catalog lookup; throws InvalidInput for unknown names. The
/// classical problems ignore the supplied orders.
WaveProblem1D make_problem_1d(std::string_view name, FractionalOrder alpha);
WaveProblem2D make_problem_2d(std::string_view name, FractionalOrder alpha, FractionalOrder beta);

/// Coefficient forms for custom problems:
///   const:c          c
///   poly:c0,c1,...   c0 + c1 x + c2 x^2 + ...
///   power:c,p        c x^p
///   exp:c,k          c e^{k x}
Profile1D parse_coefficient_1d(std::string_view form);

/// 2D forms:
///   const:c          c
///   power:c,p,q      c x^p y^q
///   exp:c,kx,ky      c e^{kx x + ky y}
Profile2D parse_coefficient_2d(std::string_view form);

/// Named initial profiles on [0, L]: "zero", "quartic" (bump scaled to L),
/// "sine" (sin(πx/L)).
Profile1D named_profile_1d(std::string_view name, double length);
/// Tensor products of the 1D profiles.
Profile2D named_profile_2d(std::string_view name, double length_x, double length_y);

struct CustomSpec1D {
    FractionalOrder alpha{1.5};
    double length = 1.0;
    double final_time = 1.0;
    std::string coefficient = "const:1";
    std::string displacement = "quartic";
    std::string velocity = "zero";
};
/// Zero-source problem assembled from forms; no exact solution.
WaveProblem1D custom_problem_1d(const CustomSpec1D& spec);

struct CustomSpec2D {
    FractionalOrder alpha{1.5};
    FractionalOrder beta{1.5};
    double length_x = 1.0;
    double length_y = 1.0;
    double final_time = 0.5;
    std::string coefficient_x = "const:1";
    std::string coefficient_y = "const:1";
    std::string displacement = "quartic";
    std::string velocity = "zero";
};
WaveProblem2D custom_problem_2d(const CustomSpec2D& spec);

/// Coefficient samples at interior nodes. Throws InvalidInput for negative
/// values and emits a diagnostic when a sample is exactly zero.
std::vector<double> sample_coefficient(const Profile1D& coefficient, const Grid1D& grid);
std::vector<double> sample_coefficient(const Profile2D& coefficient, const Grid2D& grid);

}  // namespace rieszwave
