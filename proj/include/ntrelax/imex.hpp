#pragma once

#include "ntrelax/scheme.hpp"

#include <array>
#include <complex>

namespace ntrelax {

/// Paired explicit/implicit Butcher tableaux with three stages (first implicit stage empty).
struct ImexTableau {
    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> b{};
    std::array<double, 3> c{};
    std::array<std::array<double, 3>, 3> a_impl{};
    std::array<double, 3> b_impl{};
    std::array<double, 3> c_impl{};
};

/// ARS(2,2,2): gamma = 1 - sqrt(2)/2, delta = 1 - 1/(2 gamma). L-stable and stiffly accurate.
ImexTableau ars222();

/// Amplification of the implicit part on y' = lambda y, z = lambda dt.
std::complex<double> ars222_stability(std::complex<double> z);

/// Semi-discrete flux divergence -(H_{i+1/2} - H_{i-1/2}) / dx on the primal grid, with
/// minmod-MUSCL face states and the local Lax-Friedrichs flux. Returns N x d values.
std::vector<double> muscl_llf_rate(const ModelSpec& model, const SolutionField& field, BoundaryKind bc);

/// One ARS(2,2,2) step of U_t + F(U)_x = g(U)/eps on the primal grid.
SolutionField imex_rk2_step(const ModelSpec& model, const SolutionField& field, double dt, double eps,
                            BoundaryKind bc, const ImplicitSolveOptions& opts = {});

/// Fine-grid reference: IMEX steps with config.cfl (0.5 by convention) up to config.t_final.
SolutionField reference_run(const ModelSpec& model, const SolutionField& initial, const SchemeConfig& config);

/// Block-averages a primal fine field onto `coarse` (either parity). The fine cell count must
/// be a multiple of the coarse one; fine cells cut by a staggered face are split by weight.
/// Staggered cells that stick out of the domain use periodic wrap or edge extension per `bc`.
SolutionField restrict_block_average(const SolutionField& fine, const Grid1D& coarse, BoundaryKind bc);

}  // namespace ntrelax
