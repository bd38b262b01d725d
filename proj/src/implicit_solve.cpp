#include "ntrelax/implicit_solve.hpp"

#include "ntrelax/errors.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <sstream>

namespace ntrelax {

ImplicitSolveResult solve_cell_implicit(const ModelSpec& model, const State& rhs, const Matrix& coeff,
                                        const ImplicitSolveOptions& opts) {
    const auto d = static_cast<Eigen::Index>(model.dim);
    ImplicitSolveResult out;
    out.value = rhs;

    // Unknowns of the nonlinear subsystem: stiff rows, plus any row that coeff couples to one.
    std::array<Eigen::Index, kMaxComponents> unknown{};
    Eigen::Index n_unknown = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
        bool coupled = model.stiff_rows[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < d && !coupled; ++j)
            coupled = model.stiff_rows[static_cast<std::size_t>(j)] && coeff(k, j) != 0.0;
        if (coupled) unknown[static_cast<std::size_t>(n_unknown++)] = k;
    }
    if (n_unknown == 0) return out;

    State& u = out.value;
    const int max_iter = model.source_affine ? std::max(opts.max_iter, 2) : opts.max_iter;
    for (int it = 1; it <= max_iter; ++it) {
        const State g = model.source_g(u);
        const Matrix dg = model.source_jacobian(u);
        const State resid_full = u - rhs - coeff * g;
        const Matrix jac_full = Matrix::Identity(d, d) - coeff * dg;

        Matrix jac(n_unknown, n_unknown);
        State resid(n_unknown);
        for (Eigen::Index a = 0; a < n_unknown; ++a) {
            resid(a) = resid_full(unknown[static_cast<std::size_t>(a)]);
            for (Eigen::Index b = 0; b < n_unknown; ++b)
                jac(a, b) = jac_full(unknown[static_cast<std::size_t>(a)], unknown[static_cast<std::size_t>(b)]);
        }
        const State step = -jac.partialPivLu().solve(resid);
        if (!step.allFinite()) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              model.name + ": singular or non-finite Newton system");
        }

        double damping = 1.0;
        State trial = u;
        for (int halving = 0;; ++halving) {
            trial = u;
            for (Eigen::Index a = 0; a < n_unknown; ++a)
                trial(unknown[static_cast<std::size_t>(a)]) += damping * step(a);
            if (model.admissible(trial)) break;
            if (halving == 30) {
                throw SolverError(SolverError::Kind::Inadmissible,
                                  model.name + ": no admissible Newton iterate");
            }
            damping *= 0.5;
        }
        u = trial;

        double scale = 1.0;
        for (Eigen::Index a = 0; a < n_unknown; ++a)
            scale = std::max(scale, 1.0 + std::abs(u(unknown[static_cast<std::size_t>(a)])));
        out.iterations = it;
        out.residual = damping * step.cwiseAbs().maxCoeff() / scale;
        if (damping == 1.0 && out.residual <= opts.tol) return out;
    }
    std::ostringstream msg;
    msg << model.name << ": Newton did not converge in " << max_iter << " iterations (residual "
        << out.residual << ")";
    throw SolverError(SolverError::Kind::NonConvergence, msg.str());
}

}  // namespace ntrelax
