#pragma once

// Independent oracles shared by the unit tests and the acceptance runner. They deliberately
// avoid the library's stencil and time-stepping code paths.

#include "ntrelax/mesh.hpp"
#include "ntrelax/models.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace support {

inline double mm(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

// Classical Nessyahu-Tadmor step on a periodic grid. `u` holds N x d values; the result lives
// on the opposite grid. Primal input produces cell i+1/2 from (i, i+1), staggered input
// produces cell i from (i-1, i).
inline std::vector<double> nt_step(const ntrelax::ModelSpec& model, const std::vector<double>& u, std::size_t n,
                                   std::size_t d, double lambda, bool from_primal) {
    auto at = [&](long i, std::size_t k) { return u[static_cast<std::size_t>((i % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n)) * d + k]; };
    std::vector<double> f(n * d), up(n * d), fp(n * d), half_flux(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        ntrelax::State s(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) s(static_cast<Eigen::Index>(k)) = u[i * d + k];
        const ntrelax::State fx = model.flux(s);
        for (std::size_t k = 0; k < d; ++k) f[i * d + k] = fx(static_cast<Eigen::Index>(k));
    }
    auto fat = [&](long i, std::size_t k) { return f[static_cast<std::size_t>((i % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n)) * d + k]; };
    for (std::size_t i = 0; i < n; ++i) {
        const long li = static_cast<long>(i);
        ntrelax::State half(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            up[i * d + k] = mm(at(li + 1, k) - at(li, k), at(li, k) - at(li - 1, k));
            fp[i * d + k] = mm(fat(li + 1, k) - fat(li, k), fat(li, k) - fat(li - 1, k));
            half(static_cast<Eigen::Index>(k)) = at(li, k) - 0.5 * lambda * fp[i * d + k];
        }
        const ntrelax::State hf = model.flux(half);
        for (std::size_t k = 0; k < d; ++k) half_flux[i * d + k] = hf(static_cast<Eigen::Index>(k));
    }
    std::vector<double> out(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = from_primal ? i : (i + n - 1) % n;
        const std::size_t r = (l + 1) % n;
        for (std::size_t k = 0; k < d; ++k)
            out[i * d + k] = 0.5 * (u[l * d + k] + u[r * d + k]) + 0.125 * (up[l * d + k] - up[r * d + k]) -
                             lambda * (half_flux[r * d + k] - half_flux[l * d + k]);
    }
    return out;
}

// Brute-force RK4 for one Jin-Xin Fourier mode: [uh, vh]' = A [uh, vh].
inline std::array<std::complex<double>, 2> jinxin_mode_rk4(double a, double eps, int k, std::complex<double> u0,
                                                           std::complex<double> v0, double t, double dt) {
    using C = std::complex<double>;
    const C iw(0.0, 2.0 * std::numbers::pi * k);
    auto rhs = [&](C u, C v) { return std::array<C, 2>{-iw * v, -iw * u + (a * u - v) / eps}; };
    const long steps = std::lround(t / dt);
    const double h = t / static_cast<double>(steps);
    C u = u0, v = v0;
    for (long s = 0; s < steps; ++s) {
        const auto k1 = rhs(u, v);
        const auto k2 = rhs(u + 0.5 * h * k1[0], v + 0.5 * h * k1[1]);
        const auto k3 = rhs(u + 0.5 * h * k2[0], v + 0.5 * h * k2[1]);
        const auto k4 = rhs(u + h * k3[0], v + h * k3[1]);
        u += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        v += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    return {u, v};
}

// y' = mu y for complex mu, written on (Re y, Im y) with eps = 1. Used to drive the scheme's
// ODE form with complex z1, z2.
inline ntrelax::Matrix complex_mult(std::complex<double> mu) {
    ntrelax::Matrix m(2, 2);
    m << mu.real(), -mu.imag(), mu.imag(), mu.real();
    return m;
}

inline ntrelax::ModelSpec complex_linear_model(std::complex<double> mu) {
    ntrelax::ModelSpec m = ntrelax::trivial_spec(2);
    const ntrelax::Matrix a = complex_mult(mu);
    m.name = "complex-linear";
    m.source_g = [a](const ntrelax::State& y) { return ntrelax::State(a * y); };
    m.source_jacobian = [a](const ntrelax::State&) { return a; };
    m.stiff_rows = {true, true};
    m.source_affine = true;
    m.admissible = [](const ntrelax::State& y) { return y.allFinite(); };
    return m;
}

}  // namespace support
