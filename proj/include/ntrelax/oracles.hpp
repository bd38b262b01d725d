#pragma once

#include "ntrelax/mesh.hpp"

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace ntrelax {

/// How a continuous profile is turned into per-cell values.
enum class Sampling { PointValue, CellAverage };

/// One Fourier mode exp(2 pi i k x) of a periodic Jin-Xin state on [0, 1].
struct FourierMode {
    int k = 0;
    std::complex<double> uhat;
    std::complex<double> vhat;
};

/// Modes of u0 = amp_u sin(2 pi x), v0 = amp_v sin(2 pi x).
std::vector<FourierMode> sine_modes(double amp_u, double amp_v);

/// exp(A t) for the 2x2 Jin-Xin mode matrix A(k) = [[0, -i w], [-i w + a/eps, -1/eps]], w = 2 pi k.
/// Written as c0 I + c1 A so that the stiff and the defective limits stay finite.
std::array<std::complex<double>, 4> jinxin_mode_propagator(double a, double eps, int k, double t);

/// Exact periodic Jin-Xin solution on [0, 1], sampled on `grid` (either parity).
SolutionField jinxin_exact(double a, double eps, const std::vector<FourierMode>& modes, double t,
                           const Grid1D& grid, Sampling sampling = Sampling::PointValue);

/// Relaxed-limit solution u = u0((x - a t) mod L), v = a u as point values at cell centers.
SolutionField advected_exact(const std::function<double(double)>& u0, double a, double t, const Grid1D& grid);

/// e_k = dx * sum_i |numeric_ik - reference_ik|. Throws std::invalid_argument on grid mismatch.
std::vector<double> l1_error(const SolutionField& numeric, const SolutionField& reference);

/// log2(e_coarse / e_fine); quiet NaN (with a warning on stderr) for non-positive input.
double observed_order(double e_coarse, double e_fine);

}  // namespace ntrelax
