#pragma once

#include "ntrelax/implicit_solve.hpp"
#include "ntrelax/mesh.hpp"
#include "ntrelax/models.hpp"
#include "ntrelax/reconstruction.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace ntrelax {

enum class ProjectionPolicy { AlternateThenProject, ProjectEveryStep };

std::string_view to_string(ProjectionPolicy p);
ProjectionPolicy parse_projection(std::string_view text);

struct SchemeConfig {
    double cfl = 0.9;
    double eps = 1e-8;
    BoundaryKind bc = BoundaryKind::Periodic;
    double t_final = 1.0;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    ProjectionPolicy projection = ProjectionPolicy::AlternateThenProject;
    Limiter limiter = Limiter::MinMod;

    /// Throws std::invalid_argument unless 0 < cfl <= 1, eps > 0 and t_final > 0.
    void validate() const;
};

struct StepReport {
    double dt_used = 0.0;
    int newton_iters_max = 0;
    double implicit_residual_max = 0.0;
    bool dt_halved = false;
    /// Set when the maximum wave speed vanished and dt fell back to cfl * dx.
    bool wave_speed_zero = false;
};

struct TimeStep {
    double dt = 0.0;
    bool wave_speed_zero = false;
};

/// dt = cfl * dx / max_i Lambda(U_i), shortened to land exactly on t_final.
TimeStep compute_dt(const ModelSpec& model, const SolutionField& field, double cfl, double t_final);

// ---- per-cell kernels -------------------------------------------------------------------
//
// `rate` is the explicit (non-stiff) time derivative: -f'_i/dx in the predictor and
// -(F_{i+1} - F_i)/dx in the corrector's backward-Taylor term.

/// Solves U = u_n + dt/2 * rate + dt/(2 eps) * g(U).
ImplicitSolveResult predictor_cell(const ModelSpec& model, const State& u_n, const State& rate, double dt,
                                   double eps, const ImplicitSolveOptions& opts);

/// Solves U = base + dt/eps * g(U) - dt^2/(4 eps) * J (g(U)/eps + rate).
/// `jac_avg` is the source Jacobian averaged over the two parent cells.
ImplicitSolveResult corrector_cell(const ModelSpec& model, const State& base, const Matrix& jac_avg,
                                   const State& rate, double dt, double eps, const ImplicitSolveOptions& opts);

// ---- whole-grid stages ------------------------------------------------------------------

/// Data shared by predictor and corrector for one step. Arrays cover cells -1..N of the input
/// grid (index i + 1), taken from a width-2 ghost padding.
struct StencilData {
    std::size_t n_cells = 0;
    std::size_t n_comp = 0;
    std::vector<double> state;  // U^n, (N+2) x d
    std::vector<double> flux;   // F(U^n), (N+2) x d
    SlopeField slopes_u;
    SlopeField slopes_f;
};

StencilData build_stencil(const ModelSpec& model, const SolutionField& field, BoundaryKind bc,
                          Limiter limiter = Limiter::MinMod);

/// Midpoint states U^{n+1/2} for cells -1..N, (N+2) x d.
std::vector<double> predictor(const ModelSpec& model, const StencilData& stencil, double dx, double dt,
                              double eps, const ImplicitSolveOptions& opts, StepReport& report);

/// Corrector onto the opposite-parity grid; returns the new cell averages at t + dt.
SolutionField corrector(const ModelSpec& model, const SolutionField& field, const StencilData& stencil,
                        const std::vector<double>& midpoints, double dt, double eps,
                        const ImplicitSolveOptions& opts, StepReport& report);

/// One predictor/corrector step. The result lives on the opposite parity of `field`.
/// An inadmissible intermediate state triggers one retry with dt halved.
std::pair<SolutionField, StepReport> step(const ModelSpec& model, const SolutionField& field,
                                          const SchemeConfig& config);

/// Same step with a prescribed dt (no CFL rule, no retry).
std::pair<SolutionField, StepReport> step_with_dt(const ModelSpec& model, const SolutionField& field,
                                                  const SchemeConfig& config, double dt);

struct RunSummary {
    SolutionField final_native;  // on whatever parity the last step produced
    std::size_t steps = 0;
    int newton_iters_max = 0;
    double implicit_residual_max = 0.0;
    std::size_t dt_halvings = 0;
    bool wave_speed_zero = false;
    double wall_seconds = 0.0;

    SolutionField final_primal(BoundaryKind bc) const { return to_primal(final_native, bc); }
};

using StepObserver = std::function<void(const SolutionField&, const StepReport&)>;

/// Advances `initial` to config.t_final.
RunSummary evolve(const ModelSpec& model, const SolutionField& initial, const SchemeConfig& config,
                  const StepObserver& observer = {});

/// One step of the scheme written as an ODE solver for y' = f(y) + g(y)/eps, with f explicit
/// and g implicit. Uses the same cell kernels as the finite-volume step.
State split_ode_step(const ModelSpec& model, const std::function<State(const State&)>& f, const State& y,
                     double dt, double eps, const ImplicitSolveOptions& opts = {});

}  // namespace ntrelax
