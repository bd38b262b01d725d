#include "ntrelax/harness.hpp"
#include "ntrelax/imex.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ntrelax;

namespace {

// Periodic minmod-MUSCL + local Lax-Friedrichs for u_t + c u_x = 0.
std::vector<double> advection_rate(const std::vector<double>& u, double c, double dx) {
    const std::size_t n = u.size();
    auto at = [&](long i) { return u[static_cast<std::size_t>((i + static_cast<long>(n)) % static_cast<long>(n))]; };
    std::vector<double> s(n), h(n + 1), r(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = support::mm(at(static_cast<long>(i) + 1) - u[i], u[i] - at(static_cast<long>(i) - 1));
    for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t l = (j + n - 1) % n, rr = j % n;
        const double ul = u[l] + 0.5 * s[l], ur = u[rr] - 0.5 * s[rr];
        h[j] = 0.5 * c * (ul + ur) - 0.5 * std::abs(c) * (ur - ul);
    }
    for (std::size_t i = 0; i < n; ++i) r[i] = -(h[i + 1] - h[i]) / dx;
    return r;
}

}  // namespace

TEST(Ars222, OrderConditions) {
    const auto t = ars222();
    for (const auto* a : {&t.a, &t.a_impl}) {
        const auto& c = a == &t.a ? t.c : t.c_impl;
        for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR((*a)[i][0] + (*a)[i][1] + (*a)[i][2], c[i], 1e-14);
    }
    for (const auto* b : {&t.b, &t.b_impl}) {
        const auto& c = b == &t.b ? t.c : t.c_impl;
        EXPECT_NEAR((*b)[0] + (*b)[1] + (*b)[2], 1.0, 1e-14);
        EXPECT_NEAR((*b)[0] * c[0] + (*b)[1] * c[1] + (*b)[2] * c[2], 0.5, 1e-14);
    }
    const double g = 1 - std::sqrt(2.0) / 2;
    EXPECT_NEAR(t.a_impl[1][1], g, 1e-16);
    EXPECT_NEAR(t.a[2][0], 1 - 1 / (2 * g), 1e-15);
}

TEST(ImexStep, SourceFreeMatchesExplicitPartOfTableau) {
    const std::size_t n = 64;
    const double c = 1.0;
    const auto model = advection_spec(c);
    SolutionField f(make_grid(0, 1, n), 1);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = f(i, 0) = std::sin(2 * std::numbers::pi * f.grid().center(i));
    const double dt = 0.5 * f.grid().dx, dx = f.grid().dx;
    const auto t = ars222();

    const auto l1 = advection_rate(u, c, dx);
    std::vector<double> u2(n), expect(n);
    for (std::size_t i = 0; i < n; ++i) u2[i] = u[i] + dt * t.a[1][0] * l1[i];
    const auto l2 = advection_rate(u2, c, dx);
    for (std::size_t i = 0; i < n; ++i) expect[i] = u[i] + dt * (t.a[2][0] * l1[i] + t.a[2][1] * l2[i]);

    const auto got = imex_rk2_step(model, f, dt, 1.0, BoundaryKind::Periodic);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got(i, 0), expect[i], 1e-14);
}

TEST(ImexStep, DecayAmplificationIsStabilityFunction) {
    SolutionField f(make_grid(0, 1, 8), 1, std::vector<double>(8, 1.0));
    for (double z : {-0.1, -1.0, -10.0, -1e8}) {
        const double eps = 0.01;
        const auto out = imex_rk2_step(linear_decay_spec(), f, -z * eps, eps, BoundaryKind::Periodic);
        const double r = ars222_stability(z).real();
        for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(out(i, 0), r, 1e-14 * (1 + std::abs(r)));
    }
    EXPECT_LT(std::abs(ars222_stability(-1e8)), 1e-7);
    const double g = 1 - std::sqrt(2.0) / 2;
    const std::complex<double> z(-0.3, 0.2);
    EXPECT_NEAR(std::abs(ars222_stability(z) - (1.0 + (1 - 2 * g) * z) / ((1.0 - g * z) * (1.0 - g * z))), 0.0, 1e-15);
}

TEST(ImexStep, EquilibriumConstantIsFixedPoint) {
    const auto m = broadwell_spec();
    SolutionField f(make_grid(0, 1, 16), 3);
    for (std::size_t i = 0; i < 16; ++i) {
        f(i, 0) = 1.0;
        f(i, 1) = 0.5;
        f(i, 2) = 0.625;
    }
    const auto out = imex_rk2_step(m, f, 0.01, 1e-8, BoundaryKind::Periodic);
    for (std::size_t k = 0; k < f.data().size(); ++k) EXPECT_NEAR(out.data()[k], f.data()[k], 1e-15);
}

TEST(ImexReference, SecondOrderOnJinXin) {
    auto p = preset("jinxin-smooth-wp");
    const auto m = make_model(p);
    for (double eps : {1.0, 1e-8}) {
        std::vector<double> err;
        for (std::size_t n : {40, 80, 160, 320, 640}) {
            auto cfg = p.scheme_config();
            cfg.eps = eps;
            cfg.cfl = 0.5;
            const auto u = reference_run(m, initial_field(p, n), cfg);
            const auto ex = jinxin_exact(0.7, eps, sine_modes(1.0, 0.7), p.t_final, u.grid());
            err.push_back(l1_error(u, ex)[0]);
        }
        for (std::size_t k = 1; k < err.size(); ++k) {
            const double order = observed_order(err[k - 1], err[k]);
            EXPECT_GE(order, 1.8) << "eps " << eps << " level " << k;
            EXPECT_LE(order, 2.2) << "eps " << eps << " level " << k;
        }
    }
}

TEST(ImexReference, ConservesZeroSourceRows) {
    auto p = preset("broadwell-smooth");
    const auto f0 = initial_field(p, 100);
    auto cfg = p.scheme_config();
    cfg.cfl = 0.5;
    const auto u = reference_run(make_model(p), f0, cfg);
    EXPECT_EQ(u.time(), p.t_final);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_LE(std::abs(u.integral(k) - f0.integral(k)), 1e-12 * std::abs(f0.integral(k)));
}

TEST(Restriction, ConstantAndLinear) {
    const Grid1D fine = make_grid(0, 1, 3200);
    SolutionField c(fine, 1, std::vector<double>(3200, 2.5)), lin(fine, 1);
    for (std::size_t i = 0; i < 3200; ++i) lin(i, 0) = 3.0 * fine.center(i) - 1.0;
    const Grid1D coarse = make_grid(0, 1, 200);
    const auto rc = restrict_block_average(c, coarse, BoundaryKind::Periodic);
    for (std::size_t i = 0; i < 200; ++i) EXPECT_DOUBLE_EQ(rc(i, 0), 2.5);
    for (auto par : {Parity::Primal, Parity::Staggered}) {
        const auto rl = restrict_block_average(lin, coarse.with_parity(par), BoundaryKind::Transmissive);
        for (std::size_t i = 0; i + 1 < 200; ++i) EXPECT_NEAR(rl(i, 0), 3.0 * rl.grid().center(i) - 1.0, 1e-12);
    }
}

TEST(Restriction, OddRatioOntoStaggeredGrid) {
    // Ratio 5: each staggered cell takes half of the two fine cells it cuts.
    const Grid1D fine = make_grid(0, 1, 20);
    SolutionField f(fine, 1);
    for (std::size_t i = 0; i < 20; ++i) f(i, 0) = static_cast<double>(i * i);
    const auto r = restrict_block_average(f, make_grid(0, 1, 4).with_parity(Parity::Staggered), BoundaryKind::Periodic);
    EXPECT_NEAR(r(0, 0), (0.5 * 4 + 9 + 16 + 25 + 36 + 0.5 * 49) / 5.0, 1e-12);
    EXPECT_NEAR(r(3, 0), (0.5 * 289 + 324 + 361 + 0 + 1 + 0.5 * 4) / 5.0, 1e-12);
    EXPECT_NEAR(r.integral(0), f.integral(0), 1e-12);
    SolutionField lin(make_grid(0, 1, 3200), 1);
    for (std::size_t i = 0; i < 3200; ++i) lin(i, 0) = 2.0 * lin.grid().center(i);
    const auto rl = restrict_block_average(lin, make_grid(0, 1, 640).with_parity(Parity::Staggered), BoundaryKind::Periodic);
    for (std::size_t i = 0; i + 1 < 640; ++i) EXPECT_NEAR(rl(i, 0), 2.0 * rl.grid().center(i), 1e-12);
}

TEST(Restriction, RejectsIncompatibleGrids) {
    SolutionField f(make_grid(0, 1, 300), 1);
    EXPECT_THROW(restrict_block_average(f, make_grid(0, 1, 200), BoundaryKind::Periodic), std::invalid_argument);
    EXPECT_THROW(restrict_block_average(f, make_grid(-1, 1, 100), BoundaryKind::Periodic), std::invalid_argument);
}
