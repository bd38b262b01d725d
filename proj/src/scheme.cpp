#include "ntrelax/scheme.hpp"

#include "ntrelax/errors.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ntrelax {

namespace {

State load(const std::vector<double>& data, std::size_t cell, std::size_t d) {
    State s(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) s(static_cast<Eigen::Index>(k)) = data[cell * d + k];
    return s;
}

State load(const SlopeField& slopes, std::size_t cell) {
    State s(static_cast<Eigen::Index>(slopes.n_comp));
    for (std::size_t k = 0; k < slopes.n_comp; ++k) s(static_cast<Eigen::Index>(k)) = slopes(cell, k);
    return s;
}

void store(std::vector<double>& data, std::size_t cell, const State& s) {
    for (Eigen::Index k = 0; k < s.size(); ++k) data[cell * static_cast<std::size_t>(s.size()) + static_cast<std::size_t>(k)] = s(k);
}

void note(StepReport& report, const ImplicitSolveResult& r) {
    report.newton_iters_max = std::max(report.newton_iters_max, r.iterations);
    report.implicit_residual_max = std::max(report.implicit_residual_max, r.residual);
}

void require_admissible(const ModelSpec& model, const State& u, const char* where, double x) {
    if (!model.admissible(u)) {
        std::ostringstream msg;
        msg << model.name << ": inadmissible " << where << " state near x = " << x;
        throw SolverError(SolverError::Kind::Inadmissible, msg.str());
    }
}

}  // namespace

std::string_view to_string(ProjectionPolicy p) {
    return p == ProjectionPolicy::AlternateThenProject ? "alternate" : "every-step";
}

ProjectionPolicy parse_projection(std::string_view text) {
    if (text == "alternate") return ProjectionPolicy::AlternateThenProject;
    if (text == "every-step") return ProjectionPolicy::ProjectEveryStep;
    throw std::invalid_argument("unknown projection policy '" + std::string(text) +
                                "' (expected alternate|every-step)");
}

void SchemeConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (!(newton_tol > 0.0) || newton_max_iter < 1)
        throw std::invalid_argument("invalid Newton tolerance or iteration limit");
}

TimeStep compute_dt(const ModelSpec& model, const SolutionField& field, double cfl, double t_final) {
    const std::size_t d = field.n_comp();
    double lambda_max = 0.0;
    State u(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < field.n_cells(); ++i) {
        for (std::size_t k = 0; k < d; ++k) u(static_cast<Eigen::Index>(k)) = field(i, k);
        lambda_max = std::max(lambda_max, model.max_wave_speed(u));
    }
    TimeStep ts;
    const double dx = field.grid().dx;
    if (lambda_max > 0.0) {
        ts.dt = cfl * dx / lambda_max;
    } else {
        ts.dt = cfl * dx;
        ts.wave_speed_zero = true;
    }
    const double remaining = t_final - field.time();
    // Absorb round-off so the run never ends with a sliver step.
    if (remaining <= ts.dt * (1.0 + 1e-10)) ts.dt = remaining;
    return ts;
}

ImplicitSolveResult predictor_cell(const ModelSpec& model, const State& u_n, const State& rate, double dt,
                                   double eps, const ImplicitSolveOptions& opts) {
    const auto d = static_cast<Eigen::Index>(model.dim);
    const State rhs = u_n + 0.5 * dt * rate;
    const Matrix coeff = (0.5 * dt / eps) * Matrix::Identity(d, d);
    return solve_cell_implicit(model, rhs, coeff, opts);
}

ImplicitSolveResult corrector_cell(const ModelSpec& model, const State& base, const Matrix& jac_avg,
                                   const State& rate, double dt, double eps, const ImplicitSolveOptions& opts) {
    const auto d = static_cast<Eigen::Index>(model.dim);
    const double c_taylor = dt * dt / (4.0 * eps);
    const State rhs = base - c_taylor * (jac_avg * rate);
    const Matrix coeff = (dt / eps) * Matrix::Identity(d, d) - (c_taylor / eps) * jac_avg;
    return solve_cell_implicit(model, rhs, coeff, opts);
}

StencilData build_stencil(const ModelSpec& model, const SolutionField& field, BoundaryKind bc,
                          Limiter limiter) {
    const std::size_t n = field.n_cells();
    const std::size_t d = field.n_comp();
    if (d != model.dim) throw std::invalid_argument("field dimension does not match " + model.name);

    const auto padded = pad_with_ghosts(field, bc, 2);
    std::vector<double> padded_flux(padded.size());
    for (std::size_t j = 0; j < n + 4; ++j) store(padded_flux, j, model.flux(load(padded, j, d)));

    StencilData s;
    s.n_cells = n;
    s.n_comp = d;
    s.state.assign(padded.begin() + static_cast<long>(d), padded.end() - static_cast<long>(d));
    s.flux.assign(padded_flux.begin() + static_cast<long>(d), padded_flux.end() - static_cast<long>(d));
    s.slopes_u = limited_slopes(padded, d, limiter);
    s.slopes_f = flux_slopes(padded_flux, d, limiter);
    return s;
}

std::vector<double> predictor(const ModelSpec& model, const StencilData& stencil, double dx, double dt,
                              double eps, const ImplicitSolveOptions& opts, StepReport& report) {
    const std::size_t d = stencil.n_comp;
    const std::size_t m = stencil.n_cells + 2;
    std::vector<double> mid(m * d);
    for (std::size_t c = 0; c < m; ++c) {
        const State rate = -load(stencil.slopes_f, c) / dx;
        const auto r = predictor_cell(model, load(stencil.state, c, d), rate, dt, eps, opts);
        note(report, r);
        store(mid, c, r.value);
    }
    return mid;
}

SolutionField corrector(const ModelSpec& model, const SolutionField& field, const StencilData& stencil,
                        const std::vector<double>& midpoints, double dt, double eps,
                        const ImplicitSolveOptions& opts, StepReport& report) {
    const std::size_t n = stencil.n_cells;
    const std::size_t d = stencil.n_comp;
    const double dx = field.grid().dx;
    const double lambda = dt / dx;
    // Primal -> staggered pairs cells (i, i+1); staggered -> primal pairs (i-1, i).
    // Stencil index of input cell j is j + 1.
    const std::size_t left_offset = field.grid().parity == Parity::Primal ? 1 : 0;

    std::vector<Matrix> jac(n + 2);
    std::vector<State> mid_flux(n + 2);
    for (std::size_t c = 0; c < n + 2; ++c) {
        jac[c] = model.source_jacobian(load(stencil.state, c, d));
        mid_flux[c] = model.flux(load(midpoints, c, d));
    }

    SolutionField out(field.grid().with_parity(flipped(field.grid().parity)), d, field.time() + dt);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i + left_offset;
        const std::size_t r = l + 1;
        const State ul = load(stencil.state, l, d);
        const State ur = load(stencil.state, r, d);
        const State base = 0.5 * (ul + ur) + 0.125 * (load(stencil.slopes_u, l) - load(stencil.slopes_u, r)) -
                           lambda * (mid_flux[r] - mid_flux[l]);
        const State rate = -(load(stencil.flux, r, d) - load(stencil.flux, l, d)) / dx;
        const Matrix jac_avg = 0.5 * (jac[l] + jac[r]);
        const auto res = corrector_cell(model, base, jac_avg, rate, dt, eps, opts);
        note(report, res);
        require_admissible(model, res.value, "corrector", out.grid().center(i));
        for (std::size_t k = 0; k < d; ++k) out(i, k) = res.value(static_cast<Eigen::Index>(k));
    }
    return out;
}

std::pair<SolutionField, StepReport> step_with_dt(const ModelSpec& model, const SolutionField& field,
                                                  const SchemeConfig& config, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    StepReport report;
    report.dt_used = dt;
    const ImplicitSolveOptions opts{config.newton_tol, config.newton_max_iter};
    const StencilData stencil = build_stencil(model, field, config.bc, config.limiter);
    const auto mid = predictor(model, stencil, field.grid().dx, dt, config.eps, opts, report);
    for (std::size_t c = 0; c < stencil.n_cells + 2; ++c)
        require_admissible(model, load(mid, c, stencil.n_comp), "midpoint", field.grid().center(0) + (static_cast<double>(c) - 1.0) * field.grid().dx);
    SolutionField next = corrector(model, field, stencil, mid, dt, config.eps, opts, report);
    if (!next.all_finite()) throw SolverError(SolverError::Kind::NonFinite, model.name + ": non-finite state after step");
    return {std::move(next), report};
}

std::pair<SolutionField, StepReport> step(const ModelSpec& model, const SolutionField& field,
                                          const SchemeConfig& config) {
    const TimeStep ts = compute_dt(model, field, config.cfl, config.t_final);
    try {
        auto result = step_with_dt(model, field, config, ts.dt);
        result.second.wave_speed_zero = ts.wave_speed_zero;
        return result;
    } catch (const SolverError& e) {
        if (e.kind() != SolverError::Kind::Inadmissible) throw;
    }
    auto result = step_with_dt(model, field, config, 0.5 * ts.dt);
    result.second.dt_halved = true;
    result.second.wave_speed_zero = ts.wave_speed_zero;
    return result;
}

RunSummary evolve(const ModelSpec& model, const SolutionField& initial, const SchemeConfig& config,
                  const StepObserver& observer) {
    config.validate();
    if (initial.grid().parity != Parity::Primal) throw std::invalid_argument("evolve: initial field must be primal");
    const auto start = std::chrono::steady_clock::now();

    RunSummary summary;
    SolutionField current = initial;
    while (current.time() < config.t_final) {
        auto [next, report] = step(model, current, config);
        if (config.projection == ProjectionPolicy::ProjectEveryStep) next = to_primal(next, config.bc);
        // The clamp in compute_dt makes the last step land on t_final up to round-off.
        if (config.t_final - next.time() <= 1e-14 * config.t_final) next.set_time(config.t_final);
        ++summary.steps;
        summary.newton_iters_max = std::max(summary.newton_iters_max, report.newton_iters_max);
        summary.implicit_residual_max = std::max(summary.implicit_residual_max, report.implicit_residual_max);
        if (report.dt_halved) ++summary.dt_halvings;
        summary.wave_speed_zero = summary.wave_speed_zero || report.wave_speed_zero;
        if (observer) observer(next, report);
        current = std::move(next);
    }
    summary.final_native = std::move(current);
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

State split_ode_step(const ModelSpec& model, const std::function<State(const State&)>& f, const State& y,
                     double dt, double eps, const ImplicitSolveOptions& opts) {
    const State f_n = f(y);
    const State y_half = predictor_cell(model, y, f_n, dt, eps, opts).value;
    const State base = y + dt * f(y_half);
    return corrector_cell(model, base, model.source_jacobian(y), f_n, dt, eps, opts).value;
}

}  // namespace ntrelax
