#include "ntrelax/reconstruction.hpp"

#include <stdexcept>
#include <string>

namespace ntrelax {

std::string_view to_string(Limiter l) { return l == Limiter::MinMod ? "minmod" : "unlimited"; }

Limiter parse_limiter(std::string_view text) {
    if (text == "minmod") return Limiter::MinMod;
    if (text == "unlimited") return Limiter::Unlimited;
    throw std::invalid_argument("unknown limiter '" + std::string(text) + "' (expected minmod|unlimited)");
}

SlopeField limited_slopes(std::span<const double> padded, std::size_t n_comp, Limiter limiter) {
    if (n_comp == 0 || padded.size() % n_comp != 0)
        throw std::invalid_argument("limited_slopes: data size is not a multiple of n_comp");
    const std::size_t m = padded.size() / n_comp;
    if (m < 3) throw std::invalid_argument("limited_slopes: need at least 3 cells incl. ghosts");

    SlopeField s;
    s.n_cells = m - 2;
    s.n_comp = n_comp;
    s.values.resize(s.n_cells * n_comp);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        for (std::size_t k = 0; k < n_comp; ++k) {
            const double um = padded[(i - 1) * n_comp + k];
            const double u0 = padded[i * n_comp + k];
            const double up = padded[(i + 1) * n_comp + k];
            s.values[(i - 1) * n_comp + k] =
                limiter == Limiter::MinMod ? minmod(up - u0, u0 - um) : 0.5 * (up - um);
        }
    }
    return s;
}

SlopeField flux_slopes(std::span<const double> padded_flux, std::size_t n_comp, Limiter limiter) {
    return limited_slopes(padded_flux, n_comp, limiter);
}

}  // namespace ntrelax
