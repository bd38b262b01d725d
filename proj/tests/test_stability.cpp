#include "ntrelax/scheme.hpp"
#include "ntrelax/stability.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace ntrelax;

TEST(Phi, Examples) {
    EXPECT_EQ(phi(0.0, 0.0), complex(1.0));
    EXPECT_EQ(phi(0.0, -2.0), complex(0.25));
    EXPECT_NEAR(std::abs(phi(-1.0, 0.0) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(phi(1.0, 0.0) - 2.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(phi(0.0, complex(0, 2))), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(phi(0.0, -1e6)), 1.0 / (1.0 + 1e6 + 2.5e11), 1e-24);
    EXPECT_THROW(phi(0.3, 2.0), std::domain_error);
}

TEST(Phi, ExplicitLimitIsMidpointPolynomial) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n = 0; n < 50; ++n) {
        const complex z(u(rng), u(rng));
        EXPECT_NEAR(std::abs(phi(z, 0.0) - (1.0 + z + z * z / 2.0)), 0.0, 1e-13);
    }
}

TEST(Phi, ConjugateSymmetry) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int n = 0; n < 200; ++n) {
        const complex z1(u(rng), u(rng)), z2(u(rng), u(rng));
        EXPECT_NEAR(std::abs(phi(std::conj(z1), std::conj(z2)) - std::conj(phi(z1, z2))), 0.0,
                    1e-13 * (1 + std::abs(phi(z1, z2))));
    }
}

TEST(Phi, SchemeAmplificationMatchesOnSplitOde) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-4, 0), im(-4, 4), re1(-2, 1);
    for (int n = 0; n < 20; ++n) {
        const complex z1(re1(rng), im(rng)), z2(-std::abs(re(rng)) - 1e-3, im(rng));
        const double dt = 0.1;
        const auto model = support::complex_linear_model(z2 / dt);
        const Matrix a1 = support::complex_mult(z1 / dt);
        State y0(2);
        y0 << 1.0, 0.0;
        const State y1 = split_ode_step(model, [&](const State& y) { return State(a1 * y); }, y0, dt, 1.0);
        const complex amp(y1(0), y1(1));
        EXPECT_NEAR(std::abs(amp - phi(z1, z2)), 0.0, 1e-12 * std::max(1.0, std::abs(phi(z1, z2))));
    }
}

TEST(LStability, SampledLeftHalfPlane) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> mag(-6, 6), ang(0.5, 1.5);
    std::vector<complex> z;
    for (int n = 0; n < 100000; ++n) z.push_back(std::polar(std::pow(10.0, mag(rng)), std::numbers::pi * ang(rng)));
    z.push_back(-1e6);
    const auto rep = check_L_stability(z);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.n_samples, z.size());
    EXPECT_LE(rep.max_magnitude, 1.0);
    EXPECT_LT(rep.far_field, 1e-5);
}

TEST(LStability, ImaginaryAxisBounded) {
    std::vector<complex> z;
    for (double y = -1e4; y <= 1e4; y += 1e-2) z.emplace_back(0.0, y);
    EXPECT_TRUE(check_L_stability(z).ok());
}

TEST(LStability, ReportsViolation) {
    const auto rep = check_L_stability({complex(-1.0), complex(1.0)});
    EXPECT_FALSE(rep.ok());
    EXPECT_NEAR(rep.max_violation, 1.0 / std::abs(1.0 - 1.0 + 0.25) - 1.0, 1e-12);
    EXPECT_EQ(rep.worst_z2, complex(1.0));
}

TEST(S1, ImaginarySamplingLayout) {
    const auto ys = imaginary_axis_samples(1e4, 10);
    EXPECT_EQ(ys.size(), 2u * (8 * 10 + 1) + 1);
    EXPECT_EQ(ys.front(), 0.0);
}

TEST(S1, KnownPoints) {
    const auto ys = imaginary_axis_samples(1e4, 4000);
    EXPECT_LE(max_on_imaginary_axis(0.0, ys), 1.0 + 1e-12);
    EXPECT_GT(max_on_imaginary_axis(1.0, ys), 2.4);
    const auto fine = imaginary_axis_samples(1e4, 40000);
    for (const complex z1 : {complex(-1.0), complex(-0.5, 0.5), complex(-2.2), complex(-1.0, 1.2)}) {
        const bool a = max_on_imaginary_axis(z1, ys) <= 1.0 + 1e-12;
        const bool b = max_on_imaginary_axis(z1, fine) <= 1.0 + 1e-12;
        EXPECT_EQ(a, b) << z1;
    }
}

TEST(S1, RegionGridDeterministicAndThreadIndependent) {
    RegionAxes ax{-3.0, 1.0, 21, -2.0, 2.0, 21};
    const auto a = compute_S1(ax, 1e3, 200, 1);
    const auto b = compute_S1(ax, 1e3, 200, 3);
    EXPECT_EQ(a.inside, b.inside);
    std::size_t i0 = 0, j0 = 0;
    for (std::size_t i = 0; i < ax.n_re; ++i)
        if (std::abs(ax.re(i)) < 1e-12) i0 = i;
    for (std::size_t j = 0; j < ax.n_im; ++j)
        if (std::abs(ax.im(j)) < 1e-12) j0 = j;
    EXPECT_TRUE(a.at(i0, j0));
    EXPECT_FALSE(a.at(ax.n_re - 1, j0));
    for (std::size_t j = 0; j < ax.n_im; ++j)
        for (std::size_t i = 0; i < ax.n_re; ++i) EXPECT_EQ(a.at(i, j), a.at(i, ax.n_im - 1 - j));
}

TEST(RegionCsv, HeaderRowsAndRoundTrip) {
    RegionAxes ax{0.0, 1.0, 2, 0.0, 1.0, 2};
    const auto r = compute_phi0_region(ax);
    const auto text = region_csv(r);
    EXPECT_EQ(text.substr(0, text.find('\n')), "re,im,inside");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
    const auto back = parse_region_csv(text);
    EXPECT_EQ(back.inside, r.inside);
    EXPECT_EQ(back.axes.n_re, 2u);
    EXPECT_EQ(back.axes.n_im, 2u);

    const auto s1 = compute_S1(RegionAxes{-3.0, 1.0, 9, -2.0, 2.0, 7}, 1e3, 100);
    EXPECT_EQ(parse_region_csv(region_csv(s1)).inside, s1.inside);
}
