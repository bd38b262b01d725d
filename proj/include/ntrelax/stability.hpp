#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ntrelax {

using complex = std::complex<double>;

/// Amplification of one step on y' = lambda1 y + lambda2 y, lambda1 explicit and lambda2
/// implicit, with z1 = lambda1 dt and z2 = lambda2 dt. Throws std::domain_error at z2 = 2.
complex phi(complex z1, complex z2);

struct StabilitySample {
    complex z1;
    complex z2;
    complex value;
    double magnitude = 0.0;
};

struct LStabilityReport {
    std::size_t n_samples = 0;
    double max_magnitude = 0.0;
    double max_violation = 0.0;   // max(0, |phi(0, z2)| - 1)
    complex worst_z2;
    double far_field = 0.0;       // |phi(0, z2)| at the sample of largest modulus
    bool ok() const { return max_violation == 0.0; }
};

/// Report-only check of |phi(0, z2)| <= 1 over the given samples.
LStabilityReport check_L_stability(const std::vector<complex>& z2_samples);

struct RegionAxes {
    double re_min = -4.0, re_max = 2.0;
    std::size_t n_re = 121;
    double im_min = -4.0, im_max = 4.0;
    std::size_t n_im = 161;

    double re(std::size_t i) const;
    double im(std::size_t j) const;
};

/// Boolean mask over an axis-aligned grid, stored with the real index fastest.
struct RegionGrid {
    RegionAxes axes;
    std::vector<unsigned char> inside;

    bool at(std::size_t i_re, std::size_t j_im) const { return inside[j_im * axes.n_re + i_re] != 0; }
};

/// Imaginary-axis samples used for the max over z2: 0, +-y for y log-spaced on
/// [1e-4, y_max] with `per_decade` points per decade.
std::vector<double> imaginary_axis_samples(double y_max, std::size_t per_decade);

/// max over the sampled imaginary axis (and the y -> infinity limit 0) of |phi(z1, iy)|.
double max_on_imaginary_axis(complex z1, const std::vector<double>& ys);

/// z1 in S1 iff that maximum is <= 1 + 1e-12. Work is split over `threads` threads.
RegionGrid compute_S1(const RegionAxes& axes, double y_max = 1e4, std::size_t per_decade = 4000,
                      unsigned threads = 1);

/// Region {z2 : |phi(0, z2)| <= 1 + 1e-12}.
RegionGrid compute_phi0_region(const RegionAxes& axes);

/// CSV with header `re,im,inside` and one row per grid point.
std::string region_csv(const RegionGrid& region);
void export_region_csv(const RegionGrid& region, const std::string& path);
RegionGrid parse_region_csv(const std::string& text);

}  // namespace ntrelax
