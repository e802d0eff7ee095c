#include "rieszwave/solver2d.hpp"

#include "rieszwave/errors.hpp"
#include "rieszwave/parallel.hpp"

#include <cmath>
#include <string>

namespace rieszwave {
namespace {

void require_shape(const Field2D& f, std::size_t nx, std::size_t ny, const char* what) {
    if (f.nx() != nx || f.ny() != ny)
        throw InvalidInput(std::string(what) + ": field shape does not match the grid");
}

Field2D to_field(const Grid2D& grid, std::vector<double> values) {
    return Field2D(grid.nx(), grid.ny(), std::move(values));
}

void require_finite(std::span<const double> line, const char* what, std::size_t index) {
    for (double v : line)
        if (!std::isfinite(v))
            throw NumericalFailure(std::string(what) + " " + std::to_string(index + 1) +
                                   ": non-finite value after solve");
}

void advance(SolverState2D& state, Field2D next) {
    state.u_prev = std::move(state.u_curr);
    state.u_curr = std::move(next);
    ++state.k;
}

}  // namespace

Field2D::Field2D(std::size_t nx, std::size_t ny, double fill)
    : nx_(nx), ny_(ny), values_(nx * ny, fill) {}

Field2D::Field2D(std::size_t nx, std::size_t ny, std::vector<double> values)
    : nx_(nx), ny_(ny), values_(std::move(values)) {
    if (values_.size() != nx_ * ny_) throw InvalidInput("Field2D: value count does not equal nx*ny");
}

Field2D apply_riesz_x(const RieszStencil& stencil_x, const Field2D& u) {
    const std::size_t nx = u.nx();
    if (stencil_x.size() != nx) throw InvalidInput("apply_riesz_x: stencil size mismatch");
    const DenseMatrix& a = stencil_x.matrix();
    const double scale = stencil_x.scale();
    Field2D out(nx, u.ny());
    for (std::size_t j = 0; j < u.ny(); ++j) {
        const auto line = u.x_line(j);
        auto dst = out.x_line(j);
        for (std::size_t i = 0; i < nx; ++i) {
            const double* r = a.row(i).data();
            double sum = 0.0;
            for (std::size_t l = 0; l < nx; ++l) sum += r[l] * line[l];
            dst[i] = scale * sum;
        }
    }
    return out;
}

Field2D apply_riesz_y(const RieszStencil& stencil_y, const Field2D& u) {
    const std::size_t ny = u.ny();
    if (stencil_y.size() != ny) throw InvalidInput("apply_riesz_y: stencil size mismatch");
    const DenseMatrix& a = stencil_y.matrix();
    const double scale = stencil_y.scale();
    Field2D out(u.nx(), ny);
    // Accumulate whole x-lines so every entry is summed in ascending l.
    for (std::size_t j = 0; j < ny; ++j) {
        auto dst = out.x_line(j);
        for (std::size_t l = 0; l < ny; ++l) {
            const double w = a(j, l);
            const auto src = u.x_line(l);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
        }
        for (double& v : dst) v *= scale;
    }
    return out;
}

Scheme2D::Scheme2D(const WaveProblem2D& problem, const Grid2D& grid, double tau, Theta theta)
    : stencil_x_(problem.alpha, grid.x().h(), grid.nx()),
      stencil_y_(problem.beta, grid.y().h(), grid.ny()),
      a_(to_field(grid, sample_coefficient(problem.coefficient_x, grid))),
      b_(to_field(grid, sample_coefficient(problem.coefficient_y, grid))),
      tau_(tau),
      theta_(theta) {
    if (!(tau > 0.0)) throw InvalidInput("Scheme2D: tau must be positive");
    c_x_ = tau * tau * stencil_x_.kappa() / std::pow(grid.x().h(), problem.alpha.value());
    c_y_ = tau * tau * stencil_y_.kappa() / std::pow(grid.y().h(), problem.beta.value());
}

AdiSystems::AdiSystems(Scheme2D scheme) : scheme_(std::move(scheme)) {
    const std::size_t nx = scheme_.nx();
    const std::size_t ny = scheme_.ny();
    const double th = scheme_.theta().value();
    const DenseMatrix& ax = scheme_.stencil_x().matrix();
    const DenseMatrix& ay = scheme_.stencil_y().matrix();

    rows_.resize(ny);
    parallel_for(ny, [&](std::size_t j) {
        DenseMatrix m(nx, nx);
        for (std::size_t i = 0; i < nx; ++i) {
            const double d = th * scheme_.c_x() * scheme_.coefficient_x()(i, j);
            for (std::size_t l = 0; l < nx; ++l) m(i, l) = d * ax(i, l);
            m(i, i) += 1.0;
        }
        try {
            rows_[j] = lu_factor(m);
        } catch (const SingularMatrix& e) {
            throw SingularMatrix("ADI x-line " + std::to_string(j + 1) + ": " + e.what());
        }
    });

    columns_.resize(nx);
    parallel_for(nx, [&](std::size_t i) {
        DenseMatrix m(ny, ny);
        for (std::size_t j = 0; j < ny; ++j) {
            const double e = th * scheme_.c_y() * scheme_.coefficient_y()(i, j);
            for (std::size_t l = 0; l < ny; ++l) m(j, l) = e * ay(j, l);
            m(j, j) += 1.0;
        }
        try {
            columns_[i] = lu_factor(m);
        } catch (const SingularMatrix& e) {
            throw SingularMatrix("ADI y-line " + std::to_string(i + 1) + ": " + e.what());
        }
    });
}

KroneckerOps assemble_kronecker(const RieszStencil& stencil_x, const RieszStencil& stencil_y) {
    const std::size_t n = stencil_x.size() * stencil_y.size();
    if (n > kDirectSolveLimit)
        throw InvalidInput("dense 2D operators limited to " + std::to_string(kDirectSolveLimit) +
                           " unknowns, requested " + std::to_string(n));
    KroneckerOps ops;
    ops.a_x = kronecker(DenseMatrix::identity(stencil_y.size()), stencil_x.matrix());
    ops.a_y = kronecker(stencil_y.matrix(), DenseMatrix::identity(stencil_x.size()));
    return ops;
}

DirectSystems2D::DirectSystems2D(Scheme2D scheme)
    : scheme_(std::move(scheme)), ops_(assemble_kronecker(scheme_.stencil_x(), scheme_.stencil_y())) {
    const std::size_t n = ops_.a_x.rows();
    const double th = scheme_.theta().value();
    const auto a = scheme_.coefficient_x().values();
    const auto b = scheme_.coefficient_y().values();

    DenseMatrix x_part(n, n);
    DenseMatrix y_part(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            x_part(r, c) = scheme_.c_x() * a[r] * ops_.a_x(r, c);
            y_part(r, c) = scheme_.c_y() * b[r] * ops_.a_y(r, c);
        }
    spatial_ = x_part + y_part;

    const DenseMatrix eye = DenseMatrix::identity(n);
    perturbed_ = (eye + th * x_part) * (eye + th * y_part);
    unsplit_ = eye + th * spatial_;
    perturbed_lu_ = lu_factor(perturbed_);
    unsplit_lu_ = lu_factor(unsplit_);
}

Field2D sample_source(const WaveProblem2D& problem, const Grid2D& grid, double t) {
    return to_field(grid, grid.sample([&](double x, double y) { return problem.source(x, y, t); }));
}

Field2D first_step_2d(const WaveProblem2D& problem, const Grid2D& grid, double tau) {
    if (!(tau > 0.0)) throw InvalidInput("first_step_2d: tau must be positive");
    const RieszStencil sx(problem.alpha, grid.x().h(), grid.nx());
    const RieszStencil sy(problem.beta, grid.y().h(), grid.ny());
    const Field2D phi = to_field(grid, grid.sample(problem.initial_displacement));
    const Field2D psi = to_field(grid, grid.sample(problem.initial_velocity));
    const auto a = sample_coefficient(problem.coefficient_x, grid);
    const auto b = sample_coefficient(problem.coefficient_y, grid);
    const Field2D lx = apply_riesz_x(sx, phi);
    const Field2D ly = apply_riesz_y(sy, phi);
    const Field2D f0 = sample_source(problem, grid, 0.0);

    Field2D u1(grid.nx(), grid.ny());
    auto out = u1.values();
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = phi.values()[p] + tau * psi.values()[p] +
                 0.5 * tau * tau * (a[p] * lx.values()[p] + b[p] * ly.values()[p] + f0.values()[p]);
    return u1;
}

const Field2D& adi_step(SolverState2D& state, const AdiSystems& systems, const Field2D& source_k) {
    const Scheme2D& s = systems.scheme();
    const std::size_t nx = s.nx();
    const std::size_t ny = s.ny();
    require_shape(state.u_prev, nx, ny, "adi_step");
    require_shape(state.u_curr, nx, ny, "adi_step");
    require_shape(source_k, nx, ny, "adi_step");

    const double th = s.theta().value();
    const double tau2 = state.tau * state.tau;
    const auto uk = state.u_curr.values();
    const auto ukm1 = state.u_prev.values();
    const auto a = s.coefficient_x().values();
    const auto b = s.coefficient_y().values();

    Field2D mix(nx, ny);
    for (std::size_t p = 0; p < mix.size(); ++p) mix.values()[p] = (1.0 - 2.0 * th) * uk[p] + th * ukm1[p];
    const Field2D lx_mix = apply_riesz_x(s.stencil_x(), mix);
    const Field2D ly_k = apply_riesz_y(s.stencil_y(), state.u_curr);
    const Field2D ly_km1 = apply_riesz_y(s.stencil_y(), state.u_prev);

    Field2D star(nx, ny);
    {
        auto r = star.values();
        for (std::size_t p = 0; p < r.size(); ++p)
            r[p] = 2.0 * uk[p] - ukm1[p] + tau2 * a[p] * lx_mix.values()[p] +
                   tau2 * b[p] * ly_k.values()[p] + tau2 * source_k.values()[p];
    }
    const auto row_factors = systems.row_factors();
    parallel_for(ny, [&](std::size_t j) {
        lu_solve_in_place(row_factors[j], star.x_line(j));
        require_finite(star.x_line(j), "ADI x-line", j);
    });

    Field2D next(nx, ny);
    {
        auto r = next.values();
        for (std::size_t p = 0; p < r.size(); ++p)
            r[p] = star.values()[p] +
                   th * tau2 * b[p] * (-2.0 * ly_k.values()[p] + ly_km1.values()[p]);
    }
    const auto column_factors = systems.column_factors();
    parallel_for(nx, [&](std::size_t i) {
        std::vector<double> column(ny);
        for (std::size_t j = 0; j < ny; ++j) column[j] = next(i, j);
        lu_solve_in_place(column_factors[i], column);
        require_finite(column, "ADI y-line", i);
        for (std::size_t j = 0; j < ny; ++j) next(i, j) = column[j];
    });

    advance(state, std::move(next));
    return state.u_curr;
}

const Field2D& direct_perturbed_step(SolverState2D& state, const DirectSystems2D& systems,
                                     const Field2D& source_k) {
    const Scheme2D& s = systems.scheme();
    require_shape(state.u_prev, s.nx(), s.ny(), "direct_perturbed_step");
    require_shape(state.u_curr, s.nx(), s.ny(), "direct_perturbed_step");
    require_shape(source_k, s.nx(), s.ny(), "direct_perturbed_step");

    // [2P + τ²(a∇x + b∇y)] u^k - P u^{k-1} + τ² f, with τ²(a∇x + b∇y) = -spatial.
    const std::vector<double> pk = systems.perturbed().multiply(state.u_curr.values());
    const std::vector<double> sk = systems.spatial().multiply(state.u_curr.values());
    const std::vector<double> pkm1 = systems.perturbed().multiply(state.u_prev.values());
    const double tau2 = state.tau * state.tau;
    std::vector<double> rhs(pk.size());
    for (std::size_t p = 0; p < rhs.size(); ++p)
        rhs[p] = 2.0 * pk[p] - sk[p] - pkm1[p] + tau2 * source_k.values()[p];
    lu_solve_in_place(systems.perturbed_factors(), rhs);

    advance(state, Field2D(s.nx(), s.ny(), std::move(rhs)));
    return state.u_curr;
}

const Field2D& direct_unsplit_step(SolverState2D& state, const DirectSystems2D& systems,
                                   const Field2D& source_k) {
    const Scheme2D& s = systems.scheme();
    require_shape(state.u_prev, s.nx(), s.ny(), "direct_unsplit_step");
    require_shape(state.u_curr, s.nx(), s.ny(), "direct_unsplit_step");
    require_shape(source_k, s.nx(), s.ny(), "direct_unsplit_step");

    const double th = s.theta().value();
    const std::vector<double> sk = systems.spatial().multiply(state.u_curr.values());
    const std::vector<double> mkm1 = systems.unsplit().multiply(state.u_prev.values());
    const double tau2 = state.tau * state.tau;
    std::vector<double> rhs(sk.size());
    const auto uk = state.u_curr.values();
    for (std::size_t p = 0; p < rhs.size(); ++p)
        rhs[p] = 2.0 * uk[p] - (1.0 - 2.0 * th) * sk[p] - mkm1[p] + tau2 * source_k.values()[p];
    lu_solve_in_place(systems.unsplit_factors(), rhs);

    advance(state, Field2D(s.nx(), s.ny(), std::move(rhs)));
    return state.u_curr;
}

Method2D parse_method_2d(std::string_view name) {
    if (name == "adi") return Method2D::adi;
    if (name == "perturbed-direct") return Method2D::perturbed_direct;
    if (name == "unsplit-direct") return Method2D::unsplit_direct;
    throw InvalidInput("unknown 2D method '" + std::string(name) + "'");
}

std::string_view method_name(Method2D method) {
    switch (method) {
        case Method2D::adi: return "adi";
        case Method2D::perturbed_direct: return "perturbed-direct";
        case Method2D::unsplit_direct: return "unsplit-direct";
    }
    return "unknown";
}

SolveResult2D solve_2d(const WaveProblem2D& problem, const Grid2D& grid, double tau, Theta theta,
                       const SolveOptions2D& options) {
    const double final_time = options.final_time.value_or(problem.final_time);
    const std::size_t steps = step_count(final_time, tau);

    SolveResult2D result;
    result.final_time = final_time;
    result.steps = steps;
    auto record = [&](std::size_t k, const Field2D& u) {
        if (options.keep_trajectory) result.trajectory.push_back(u);
        if (options.observer) options.observer(k, u);
    };

    SolverState2D state;
    state.tau = tau;
    state.u_prev = to_field(grid, grid.sample(problem.initial_displacement));
    if (options.start == StartMode::exact) {
        if (!problem.exact) throw InvalidInput("exact start requires a problem with an exact solution");
        const auto& exact = *problem.exact;
        state.u_curr = to_field(grid, grid.sample([&](double x, double y) { return exact(x, y, tau); }));
    } else {
        state.u_curr = first_step_2d(problem, grid, tau);
    }
    record(0, state.u_prev);
    record(1, state.u_curr);

    if (steps > 1) {
        Scheme2D scheme(problem, grid, tau, theta);
        std::optional<AdiSystems> adi;
        std::optional<DirectSystems2D> direct;
        if (options.method == Method2D::adi)
            adi.emplace(std::move(scheme));
        else
            direct.emplace(std::move(scheme));

        for (std::size_t k = 1; k < steps; ++k) {
            const Field2D f = sample_source(problem, grid, static_cast<double>(k) * tau);
            switch (options.method) {
                case Method2D::adi: adi_step(state, *adi, f); break;
                case Method2D::perturbed_direct: direct_perturbed_step(state, *direct, f); break;
                case Method2D::unsplit_direct: direct_unsplit_step(state, *direct, f); break;
            }
            record(k + 1, state.u_curr);
        }
    }
    result.final_field = std::move(state.u_curr);
    return result;
}

}  // namespace rieszwave
