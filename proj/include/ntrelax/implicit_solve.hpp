#pragma once

#include "ntrelax/models.hpp"

namespace ntrelax {

struct ImplicitSolveOptions {
    double tol = 1e-12;
    int max_iter = 50;
};

struct ImplicitSolveResult {
    State value;
    int iterations = 0;
    /// Size of the last Newton correction relative to 1 + |U|_inf.
    double residual = 0.0;
};

/// Solves U = rhs + coeff * g(U) for one cell.
///
/// Components whose source row vanishes and which `coeff` does not couple to a stiff row are
/// set explicitly to rhs_k. The remaining ones are found by Newton with the analytic source
/// Jacobian; the step is halved while the iterate is inadmissible. For models flagged
/// `source_affine` the first step is exact and the second only confirms it.
///
/// Throws SolverError on non-convergence or when no admissible iterate is found.
ImplicitSolveResult solve_cell_implicit(const ModelSpec& model, const State& rhs, const Matrix& coeff,
                                        const ImplicitSolveOptions& opts = {});

}  // namespace ntrelax
