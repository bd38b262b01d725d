#include "ntrelax/imex.hpp"

#include "ntrelax/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ntrelax {

namespace {

State row(const std::vector<double>& data, std::size_t i, std::size_t d) {
    State s(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) s(static_cast<Eigen::Index>(k)) = data[i * d + k];
    return s;
}

State row(const SolutionField& f, std::size_t i) {
    State s(static_cast<Eigen::Index>(f.n_comp()));
    for (std::size_t k = 0; k < f.n_comp(); ++k) s(static_cast<Eigen::Index>(k)) = f(i, k);
    return s;
}

State row(const SlopeField& s, std::size_t i) {
    State out(static_cast<Eigen::Index>(s.n_comp));
    for (std::size_t k = 0; k < s.n_comp; ++k) out(static_cast<Eigen::Index>(k)) = s(i, k);
    return out;
}

void put(SolutionField& f, std::size_t i, const State& s) {
    for (std::size_t k = 0; k < f.n_comp(); ++k) f(i, k) = s(static_cast<Eigen::Index>(k));
}

}  // namespace

ImexTableau ars222() {
    const double g = 1.0 - std::sqrt(2.0) / 2.0;
    const double d = 1.0 - 1.0 / (2.0 * g);
    ImexTableau t;
    t.a = {{{0.0, 0.0, 0.0}, {g, 0.0, 0.0}, {d, 1.0 - d, 0.0}}};
    t.b = {d, 1.0 - d, 0.0};
    t.c = {0.0, g, 1.0};
    t.a_impl = {{{0.0, 0.0, 0.0}, {0.0, g, 0.0}, {0.0, 1.0 - g, g}}};
    t.b_impl = {0.0, 1.0 - g, g};
    t.c_impl = {0.0, g, 1.0};
    return t;
}

std::complex<double> ars222_stability(std::complex<double> z) {
    const double g = 1.0 - std::sqrt(2.0) / 2.0;
    return (1.0 + (1.0 - 2.0 * g) * z) / ((1.0 - g * z) * (1.0 - g * z));
}

std::vector<double> muscl_llf_rate(const ModelSpec& model, const SolutionField& field, BoundaryKind bc) {
    const std::size_t n = field.n_cells();
    const std::size_t d = field.n_comp();
    const auto padded = pad_with_ghosts(field, bc, 2);
    const SlopeField slopes = limited_slopes(padded, d);  // cells -1..N

    // Face j sits between cells j-1 and j, j = 0..N.
    std::vector<State> face_flux(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const State ul = row(padded, j + 1, d) + 0.5 * row(slopes, j);
        const State ur = row(padded, j + 2, d) - 0.5 * row(slopes, j + 1);
        const double alpha = std::max(model.max_wave_speed(ul), model.max_wave_speed(ur));
        face_flux[j] = 0.5 * (model.flux(ul) + model.flux(ur)) - 0.5 * alpha * (ur - ul);
    }
    std::vector<double> rate(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            rate[i * d + k] = -(face_flux[i + 1](static_cast<Eigen::Index>(k)) - face_flux[i](static_cast<Eigen::Index>(k))) / field.grid().dx;
    return rate;
}

SolutionField imex_rk2_step(const ModelSpec& model, const SolutionField& field, double dt, double eps,
                            BoundaryKind bc, const ImplicitSolveOptions& opts) {
    if (field.grid().parity != Parity::Primal) throw std::invalid_argument("imex_rk2_step: field must be primal");
    const ImexTableau t = ars222();
    const std::size_t n = field.n_cells();
    const std::size_t d = field.n_comp();
    const auto di = static_cast<Eigen::Index>(d);
    const Matrix coeff = (dt * t.a_impl[1][1] / eps) * Matrix::Identity(di, di);

    const auto l1 = muscl_llf_rate(model, field, bc);

    SolutionField u2(field.grid(), d, field.time() + t.c[1] * dt);
    std::vector<State> s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const State rhs = row(field, i) + dt * t.a[1][0] * row(l1, i, d);
        const State v = solve_cell_implicit(model, rhs, coeff, opts).value;
        put(u2, i, v);
        s2[i] = model.source_g(v) / eps;
    }
    const auto l2 = muscl_llf_rate(model, u2, bc);

    SolutionField u3(field.grid(), d, field.time() + dt);
    for (std::size_t i = 0; i < n; ++i) {
        const State rhs = row(field, i) + dt * (t.a[2][0] * row(l1, i, d) + t.a[2][1] * row(l2, i, d)) +
                          dt * t.a_impl[2][1] * s2[i];
        const State v = solve_cell_implicit(model, rhs, coeff, opts).value;
        if (!model.admissible(v) || !v.allFinite())
            throw SolverError(SolverError::Kind::Inadmissible, model.name + ": inadmissible IMEX state");
        put(u3, i, v);
    }
    return u3;
}

SolutionField reference_run(const ModelSpec& model, const SolutionField& initial, const SchemeConfig& config) {
    config.validate();
    const ImplicitSolveOptions opts{config.newton_tol, config.newton_max_iter};
    SolutionField u = initial;
    while (u.time() < config.t_final) {
        const double dt = compute_dt(model, u, config.cfl, config.t_final).dt;
        const double t_next = u.time() + dt;
        u = imex_rk2_step(model, u, dt, config.eps, config.bc, opts);
        u.set_time(config.t_final - t_next <= 1e-14 * config.t_final ? config.t_final : t_next);
    }
    return u;
}

SolutionField restrict_block_average(const SolutionField& fine, const Grid1D& coarse, BoundaryKind bc) {
    const Grid1D& fg = fine.grid();
    if (fg.parity != Parity::Primal) throw std::invalid_argument("restrict: fine field must be primal");
    if (fg.x_left != coarse.x_left || fg.x_right != coarse.x_right)
        throw std::invalid_argument("restrict: domains differ");
    if (coarse.n_cells == 0 || fg.n_cells % coarse.n_cells != 0)
        throw std::invalid_argument("restrict: fine cell count " + std::to_string(fg.n_cells) +
                                    " is not a multiple of " + std::to_string(coarse.n_cells));
    const std::size_t r = fg.n_cells / coarse.n_cells;
    const long nf = static_cast<long>(fg.n_cells);
    const std::size_t d = fine.n_comp();
    // Coarse cell i covers fine index range [lo, lo + r); a staggered target starts half a
    // coarse cell later, which cuts the end cells in half when r is odd.
    const double shift = coarse.parity == Parity::Staggered ? 0.5 * static_cast<double>(r) : 0.0;
    SolutionField out(coarse, d, fine.time());
    for (std::size_t i = 0; i < coarse.n_cells; ++i) {
        const double lo = static_cast<double>(i * r) + shift;
        const double hi = lo + static_cast<double>(r);
        for (long j = static_cast<long>(std::floor(lo)); static_cast<double>(j) < hi; ++j) {
            const double w = std::min(hi, static_cast<double>(j + 1)) - std::max(lo, static_cast<double>(j));
            long src = j;
            if (src >= nf) src = bc == BoundaryKind::Periodic ? src - nf : nf - 1;
            for (std::size_t k = 0; k < d; ++k) out(i, k) += w * fine(static_cast<std::size_t>(src), k);
        }
        for (std::size_t k = 0; k < d; ++k) out(i, k) /= static_cast<double>(r);
    }
    return out;
}

}  // namespace ntrelax
