#include "rieszwave/problems.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace rieszwave {
namespace {

using std::numbers::pi;

std::vector<double> parse_numbers(std::string_view list, std::string_view form) {
    std::vector<double> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        std::string_view item = list.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw InvalidInput("malformed number '" + std::string(item) + "' in coefficient form '" +
                               std::string(form) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    return out;
}

std::pair<std::string_view, std::vector<double>> split_form(std::string_view form) {
    const auto colon = form.find(':');
    if (colon == std::string_view::npos)
        throw InvalidInput("coefficient form '" + std::string(form) + "' lacks a 'kind:' prefix");
    return {form.substr(0, colon), parse_numbers(form.substr(colon + 1), form)};
}

void require_arity(std::string_view form, const std::vector<double>& args, std::size_t n) {
    if (args.size() != n)
        throw InvalidInput("coefficient form '" + std::string(form) + "' expects " +
                           std::to_string(n) + " argument(s)");
}

}  // namespace

Grid1D::Grid1D(double length, std::size_t intervals) : length_(length), intervals_(intervals) {
    if (!(length > 0.0)) throw InvalidInput("Grid1D: domain length must be positive");
    if (intervals < 2) throw InvalidInput("Grid1D: need at least 2 subintervals");
    h_ = length / static_cast<double>(intervals);
}

std::vector<double> Grid1D::sample(const std::function<double(double)>& fn) const {
    std::vector<double> v(interior_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(node(i + 1));
    return v;
}

Grid2D::Grid2D(double length_x, std::size_t intervals_x, double length_y, std::size_t intervals_y)
    : x_(length_x, intervals_x), y_(length_y, intervals_y) {}

std::vector<double> Grid2D::sample(const std::function<double(double, double)>& fn) const {
    std::vector<double> v(interior_count());
    for (std::size_t j = 0; j < ny(); ++j) {
        const double yj = y_.node(j + 1);
        for (std::size_t i = 0; i < nx(); ++i) v[i + j * nx()] = fn(x_.node(i + 1), yj);
    }
    return v;
}

double gamma_fn(double z) {
    if (!(z > 0.0)) throw InvalidInput("gamma_fn: argument must be positive");
    return std::tgamma(z);
}

double quartic_bump(double x) {
    const double s = x * (1.0 - x);
    return s * s;
}

double riesz_poly_bracket(FractionalOrder alpha, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("riesz_poly_bracket: x must lie in [0, 1]");
    const double a = alpha.value();
    const double y = 1.0 - x;
    const auto both = [&](double p) { return std::pow(x, p - a) + std::pow(y, p - a); };
    const double bracket = gamma_fn(5.0) * both(4.0) / gamma_fn(5.0 - a) -
                           2.0 * gamma_fn(4.0) * both(3.0) / gamma_fn(4.0 - a) +
                           gamma_fn(3.0) * both(2.0) / gamma_fn(3.0 - a);
    return -bracket / (2.0 * std::cos(a * pi / 2.0));
}

WaveProblem1D example_4_1(FractionalOrder alpha) {
    const double a = alpha.value();
    WaveProblem1D p;
    p.id = "example41";
    p.alpha = alpha;
    p.length = 1.0;
    p.final_time = 1.0;
    p.coefficient = [a](double x) { return std::pow(x, a); };
    p.source = [alpha, a](double x, double t) {
        return std::exp(-t) * quartic_bump(x) -
               std::pow(x, a) * std::exp(-t) * riesz_poly_bracket(alpha, x);
    };
    p.initial_displacement = [](double x) { return quartic_bump(x); };
    p.initial_velocity = [](double x) { return -quartic_bump(x); };
    p.exact = [](double x, double t) { return std::exp(-t) * quartic_bump(x); };
    return p;
}

WaveProblem2D example_4_2(FractionalOrder alpha, FractionalOrder beta) {
    const double a = alpha.value();
    const double b = beta.value();
    WaveProblem2D p;
    p.id = "example42";
    p.alpha = alpha;
    p.beta = beta;
    p.final_time = 0.5;
    p.coefficient_x = [a](double x, double y) { return std::pow(x, a) * y; };
    p.coefficient_y = [b](double x, double y) { return x * std::pow(y, b); };
    p.source = [alpha, beta, a, b](double x, double y, double t) {
        const double s = std::sin(t + 1.0);
        const double X = quartic_bump(x);
        const double Y = quartic_bump(y);
        return -s * X * Y - std::pow(x, a) * y * s * riesz_poly_bracket(alpha, x) * Y -
               x * std::pow(y, b) * s * X * riesz_poly_bracket(beta, y);
    };
    p.initial_displacement = [](double x, double y) {
        return std::sin(1.0) * quartic_bump(x) * quartic_bump(y);
    };
    p.initial_velocity = [](double x, double y) {
        return std::cos(1.0) * quartic_bump(x) * quartic_bump(y);
    };
    p.exact = [](double x, double y, double t) {
        return std::sin(t + 1.0) * quartic_bump(x) * quartic_bump(y);
    };
    return p;
}

WaveProblem1D constcoef_free_1d(FractionalOrder alpha) {
    WaveProblem1D p;
    p.id = "constcoef-free";
    p.alpha = alpha;
    p.coefficient = [](double) { return 1.0; };
    p.source = [](double, double) { return 0.0; };
    p.initial_displacement = [](double x) { return std::sin(pi * x); };
    p.initial_velocity = [](double) { return 0.0; };
    return p;
}

WaveProblem1D constcoef_forced_1d(FractionalOrder alpha) {
    WaveProblem1D p;
    p.id = "constcoef-forced";
    p.alpha = alpha;
    p.coefficient = [](double) { return 1.0; };
    p.source = [alpha](double x, double t) {
        return std::exp(-t) * (quartic_bump(x) - riesz_poly_bracket(alpha, x));
    };
    p.initial_displacement = [](double x) { return quartic_bump(x); };
    p.initial_velocity = [](double x) { return -quartic_bump(x); };
    p.exact = [](double x, double t) { return std::exp(-t) * quartic_bump(x); };
    return p;
}

WaveProblem1D classical_1d() {
    WaveProblem1D p;
    p.id = "classical";
    p.alpha = FractionalOrder(2.0);
    p.coefficient = [](double) { return 1.0; };
    p.source = [](double, double) { return 0.0; };
    p.initial_displacement = [](double x) { return std::sin(pi * x); };
    p.initial_velocity = [](double) { return 0.0; };
    p.exact = [](double x, double t) { return std::sin(pi * x) * std::cos(pi * t); };
    return p;
}

WaveProblem2D constcoef_free_2d(FractionalOrder alpha, FractionalOrder beta) {
    WaveProblem2D p;
    p.id = "constcoef-free-2d";
    p.alpha = alpha;
    p.beta = beta;
    p.final_time = 0.5;
    p.coefficient_x = [](double, double) { return 1.0; };
    p.coefficient_y = [](double, double) { return 1.0; };
    p.source = [](double, double, double) { return 0.0; };
    p.initial_displacement = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    p.initial_velocity = [](double, double) { return 0.0; };
    return p;
}

WaveProblem2D constcoef_forced_2d(FractionalOrder alpha, FractionalOrder beta) {
    WaveProblem2D p;
    p.id = "constcoef-forced-2d";
    p.alpha = alpha;
    p.beta = beta;
    p.final_time = 0.5;
    p.coefficient_x = [](double, double) { return 1.0; };
    p.coefficient_y = [](double, double) { return 1.0; };
    p.source = [alpha, beta](double x, double y, double t) {
        const double s = std::sin(t + 1.0);
        const double X = quartic_bump(x);
        const double Y = quartic_bump(y);
        return -s * X * Y - s * riesz_poly_bracket(alpha, x) * Y - s * X * riesz_poly_bracket(beta, y);
    };
    p.initial_displacement = [](double x, double y) {
        return std::sin(1.0) * quartic_bump(x) * quartic_bump(y);
    };
    p.initial_velocity = [](double x, double y) {
        return std::cos(1.0) * quartic_bump(x) * quartic_bump(y);
    };
    p.exact = [](double x, double y, double t) {
        return std::sin(t + 1.0) * quartic_bump(x) * quartic_bump(y);
    };
    return p;
}

WaveProblem2D classical_2d() {
    WaveProblem2D p;
    p.id = "classical-2d";
    p.final_time = 0.5;
    p.coefficient_x = [](double, double) { return 1.0; };
    p.coefficient_y = [](double, double) { return 1.0; };
    p.source = [](double, double, double) { return 0.0; };
    p.initial_displacement = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    p.initial_velocity = [](double, double) { return 0.0; };
    p.exact = [](double x, double y, double t) {
        return std::sin(pi * x) * std::sin(pi * y) * std::cos(std::numbers::sqrt2 * pi * t);
    };
    return p;
}

std::vector<std::string> builtin_problem_names_1d() {
    return {"example41", "constcoef-free", "constcoef-forced", "classical"};
}

std::vector<std::string> builtin_problem_names_2d() {
    return {"example42", "constcoef-free-2d", "constcoef-forced-2d", "classical-2d"};
}

WaveProblem1D make_problem_1d(std::string_view name, FractionalOrder alpha) {
    if (name == "example41") {
        if (alpha.classical()) throw InvalidInput("example41 requires alpha in (1, 2)");
        return example_4_1(alpha);
    }
    if (name == "constcoef-free") return constcoef_free_1d(alpha);
    if (name == "constcoef-forced") return constcoef_forced_1d(alpha);
    if (name == "classical") return classical_1d();
    throw InvalidInput("unknown 1D problem '" + std::string(name) + "'");
}

WaveProblem2D make_problem_2d(std::string_view name, FractionalOrder alpha, FractionalOrder beta) {
    if (name == "example42") {
        if (alpha.classical() || beta.classical())
            throw InvalidInput("example42 requires alpha, beta in (1, 2)");
        return example_4_2(alpha, beta);
    }
    if (name == "constcoef-free-2d") return constcoef_free_2d(alpha, beta);
    if (name == "constcoef-forced-2d") return constcoef_forced_2d(alpha, beta);
    if (name == "classical-2d") return classical_2d();
    throw InvalidInput("unknown 2D problem '" + std::string(name) + "'");
}

Profile1D parse_coefficient_1d(std::string_view form) {
    const auto [kind, args] = split_form(form);
    if (kind == "const") {
        require_arity(form, args, 1);
        return [c = args[0]](double) { return c; };
    }
    if (kind == "poly") {
        if (args.empty()) throw InvalidInput("poly form needs at least one coefficient");
        return [c = args](double x) {
            double v = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
            return v;
        };
    }
    if (kind == "power") {
        require_arity(form, args, 2);
        return [c = args[0], p = args[1]](double x) { return c * std::pow(x, p); };
    }
    if (kind == "exp") {
        require_arity(form, args, 2);
        return [c = args[0], k = args[1]](double x) { return c * std::exp(k * x); };
    }
    throw InvalidInput("unknown coefficient form '" + std::string(form) + "'");
}

Profile2D parse_coefficient_2d(std::string_view form) {
    const auto [kind, args] = split_form(form);
    if (kind == "const") {
        require_arity(form, args, 1);
        return [c = args[0]](double, double) { return c; };
    }
    if (kind == "power") {
        require_arity(form, args, 3);
        return [c = args[0], p = args[1], q = args[2]](double x, double y) {
            return c * std::pow(x, p) * std::pow(y, q);
        };
    }
    if (kind == "exp") {
        require_arity(form, args, 3);
        return [c = args[0], kx = args[1], ky = args[2]](double x, double y) {
            return c * std::exp(kx * x + ky * y);
        };
    }
    throw InvalidInput("unknown 2D coefficient form '" + std::string(form) + "'");
}

Profile1D named_profile_1d(std::string_view name, double length) {
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "quartic") return [length](double x) { return quartic_bump(x / length); };
    if (name == "sine") return [length](double x) { return std::sin(pi * x / length); };
    throw InvalidInput("unknown profile '" + std::string(name) + "'");
}

Profile2D named_profile_2d(std::string_view name, double length_x, double length_y) {
    auto fx = named_profile_1d(name, length_x);
    auto fy = named_profile_1d(name, length_y);
    return [fx, fy](double x, double y) { return fx(x) * fy(y); };
}

WaveProblem1D custom_problem_1d(const CustomSpec1D& spec) {
    if (!(spec.length > 0.0) || !(spec.final_time > 0.0))
        throw InvalidInput("custom problem: length and final time must be positive");
    WaveProblem1D p;
    p.id = "custom";
    p.alpha = spec.alpha;
    p.length = spec.length;
    p.final_time = spec.final_time;
    p.coefficient = parse_coefficient_1d(spec.coefficient);
    p.source = [](double, double) { return 0.0; };
    p.initial_displacement = named_profile_1d(spec.displacement, spec.length);
    p.initial_velocity = named_profile_1d(spec.velocity, spec.length);
    return p;
}

WaveProblem2D custom_problem_2d(const CustomSpec2D& spec) {
    if (!(spec.length_x > 0.0) || !(spec.length_y > 0.0) || !(spec.final_time > 0.0))
        throw InvalidInput("custom problem: lengths and final time must be positive");
    WaveProblem2D p;
    p.id = "custom-2d";
    p.alpha = spec.alpha;
    p.beta = spec.beta;
    p.length_x = spec.length_x;
    p.length_y = spec.length_y;
    p.final_time = spec.final_time;
    p.coefficient_x = parse_coefficient_2d(spec.coefficient_x);
    p.coefficient_y = parse_coefficient_2d(spec.coefficient_y);
    p.source = [](double, double, double) { return 0.0; };
    p.initial_displacement = named_profile_2d(spec.displacement, spec.length_x, spec.length_y);
    p.initial_velocity = named_profile_2d(spec.velocity, spec.length_x, spec.length_y);
    return p;
}

namespace {

void check_samples(const std::vector<double>& v, const char* what) {
    bool zero = false;
    for (double c : v) {
        if (!(c >= 0.0)) throw InvalidInput(std::string(what) + ": coefficient is negative or NaN");
        zero = zero || c == 0.0;
    }
    if (zero) emit_diagnostic(std::string(what) + ": coefficient vanishes at an interior node");
}

}  // namespace

std::vector<double> sample_coefficient(const Profile1D& coefficient, const Grid1D& grid) {
    auto v = grid.sample(coefficient);
    check_samples(v, "sample_coefficient");
    return v;
}

std::vector<double> sample_coefficient(const Profile2D& coefficient, const Grid2D& grid) {
    auto v = grid.sample(coefficient);
    check_samples(v, "sample_coefficient");
    return v;
}

}  // namespace rieszwave
