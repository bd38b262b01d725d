#include "ntrelax/oracles.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ntrelax {

using cplx = std::complex<double>;

namespace {

// (e^w - 1) / w
cplx phi1(cplx w) {
    if (std::abs(w) < 1e-5) return 1.0 + w / 2.0 + w * w / 6.0;
    return (std::exp(w) - 1.0) / w;
}

// Average of exp(2 pi i k x) over a cell of width dx, relative to its center value.
double cell_factor(int k, double dx, Sampling s) {
    if (s == Sampling::PointValue || k == 0) return 1.0;
    const double h = std::numbers::pi * k * dx;
    return std::sin(h) / h;
}

}  // namespace

std::vector<FourierMode> sine_modes(double amp_u, double amp_v) {
    // sin(2 pi x) = (e^{2 pi i x} - e^{-2 pi i x}) / (2i)
    const cplx c(0.0, -0.5);
    return {{1, amp_u * c, amp_v * c}, {-1, -amp_u * c, -amp_v * c}};
}

std::array<cplx, 4> jinxin_mode_propagator(double a, double eps, int k, double t) {
    const double w = 2.0 * std::numbers::pi * k;
    const cplx i(0.0, 1.0);
    const cplx a00 = 0.0, a01 = -i * w, a10 = -i * w + a / eps, a11 = -1.0 / eps;

    // Eigenvalues of sigma * A with sigma = min(1, eps) keep the entries O(1 + |w|) even when
    // 1/eps would overflow.
    const double sigma = std::min(1.0, eps);
    const cplx b00 = 0.0, b01 = sigma * a01, b10 = -i * w * sigma + a * (sigma / eps), b11 = -sigma / eps;
    const cplx mu = 0.5 * (b00 + b11);
    const cplx det = b00 * b11 - b01 * b10;
    const cplx s = std::sqrt(mu * mu - det);
    const cplx big_b = std::abs(mu + s) >= std::abs(mu - s) ? mu + s : mu - s;
    const cplx big = big_b / sigma;
    const cplx small = big_b == 0.0 ? cplx(0.0) : det / big_b / sigma;
    const cplx l2 = big.real() > small.real() ? big : small;
    const cplx l1 = big.real() > small.real() ? small : big;

    const cplx e2 = std::exp(l2 * t);
    const cplx c1 = e2 * t * phi1((l1 - l2) * t);
    const cplx c0 = e2 - l2 * c1;
    return {c0 + c1 * a00, c1 * a01, c1 * a10, c0 + c1 * a11};
}

SolutionField jinxin_exact(double a, double eps, const std::vector<FourierMode>& modes, double t,
                           const Grid1D& grid, Sampling sampling) {
    if (!(eps > 0.0)) throw std::invalid_argument("jinxin_exact: eps must be positive");
    if (std::abs(grid.length() - 1.0) > 1e-12) throw std::invalid_argument("jinxin_exact: domain must have unit length");
    SolutionField out(grid, 2, t);
    for (const auto& m : modes) {
        const auto e = jinxin_mode_propagator(a, eps, m.k, t);
        const cplx uh = e[0] * m.uhat + e[1] * m.vhat;
        const cplx vh = e[2] * m.uhat + e[3] * m.vhat;
        const double f = cell_factor(m.k, grid.dx, sampling);
        for (std::size_t c = 0; c < grid.n_cells; ++c) {
            const cplx basis = std::exp(cplx(0.0, 2.0 * std::numbers::pi * m.k * grid.center(c)));
            out(c, 0) += f * (uh * basis).real();
            out(c, 1) += f * (vh * basis).real();
        }
    }
    return out;
}

SolutionField advected_exact(const std::function<double(double)>& u0, double a, double t, const Grid1D& grid) {
    SolutionField out(grid, 2, t);
    const double len = grid.length();
    for (std::size_t c = 0; c < grid.n_cells; ++c) {
        double xi = std::fmod(grid.center(c) - a * t - grid.x_left, len);
        if (xi < 0.0) xi += len;
        const double u = u0(grid.x_left + xi);
        out(c, 0) = u;
        out(c, 1) = a * u;
    }
    return out;
}

std::vector<double> l1_error(const SolutionField& numeric, const SolutionField& reference) {
    if (!numeric.grid().same_cells(reference.grid()) || numeric.n_comp() != reference.n_comp())
        throw std::invalid_argument("l1_error: fields live on different grids");
    std::vector<double> err(numeric.n_comp(), 0.0);
    for (std::size_t c = 0; c < numeric.n_cells(); ++c)
        for (std::size_t k = 0; k < numeric.n_comp(); ++k) err[k] += std::abs(numeric(c, k) - reference(c, k));
    for (double& e : err) e *= numeric.grid().dx;
    return err;
}

double observed_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        std::cerr << "warning: observed order undefined for errors " << e_coarse << ", " << e_fine << '\n';
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::log2(e_coarse / e_fine);
}

}  // namespace ntrelax
