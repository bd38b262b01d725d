#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ntrelax {

/// sgn(a) * min(|a|, |b|) when a and b share a sign, zero otherwise.
inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

/// MinMod is the scheme's limiter. Unlimited uses the centered difference (u_{i+1} - u_{i-1}) / 2
/// and exists for sensitivity studies on smooth data only.
enum class Limiter { MinMod, Unlimited };

std::string_view to_string(Limiter l);
Limiter parse_limiter(std::string_view text);

/// Undivided limited differences u'_i (approximating dx * du/dx), cell-major M x d.
struct SlopeField {
    std::size_t n_cells = 0;
    std::size_t n_comp = 0;
    std::vector<double> values;

    double operator()(std::size_t cell, std::size_t comp) const { return values[cell * n_comp + comp]; }
};

/// Component-wise limited slopes. `padded` holds M cells with one extra cell on each side of
/// the range of interest; the result has M - 2 cells, aligned with padded cells 1..M-2.
SlopeField limited_slopes(std::span<const double> padded, std::size_t n_comp, Limiter limiter = Limiter::MinMod);

/// Same contract as limited_slopes, applied to point fluxes F(U_i).
SlopeField flux_slopes(std::span<const double> padded_flux, std::size_t n_comp, Limiter limiter = Limiter::MinMod);

}  // namespace ntrelax
