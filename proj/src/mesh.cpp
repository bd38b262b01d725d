#include "ntrelax/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ntrelax {

Parity flipped(Parity p) { return p == Parity::Primal ? Parity::Staggered : Parity::Primal; }

std::string_view to_string(Parity p) { return p == Parity::Primal ? "primal" : "staggered"; }

std::string_view to_string(BoundaryKind bc) {
    return bc == BoundaryKind::Periodic ? "periodic" : "transmissive";
}

BoundaryKind parse_boundary(std::string_view text) {
    if (text == "periodic") return BoundaryKind::Periodic;
    if (text == "transmissive") return BoundaryKind::Transmissive;
    throw std::invalid_argument("unknown boundary kind '" + std::string(text) +
                                "' (expected periodic|transmissive)");
}

double Grid1D::center(std::size_t i) const {
    const double shift = parity == Parity::Staggered ? 1.0 : 0.5;
    return x_left + (static_cast<double>(i) + shift) * dx;
}

double Grid1D::left_face(std::size_t i) const { return center(i) - 0.5 * dx; }

Grid1D Grid1D::with_parity(Parity p) const {
    Grid1D g = *this;
    g.parity = p;
    return g;
}

bool Grid1D::same_cells(const Grid1D& other) const {
    return n_cells == other.n_cells && parity == other.parity && x_left == other.x_left &&
           x_right == other.x_right;
}

Grid1D make_grid(double x_left, double x_right, std::size_t n_cells) {
    if (!(std::isfinite(x_left) && std::isfinite(x_right)) || !(x_right > x_left))
        throw std::invalid_argument("make_grid: degenerate domain");
    if (n_cells < 4)
        throw std::invalid_argument("make_grid: need at least 4 cells, got " +
                                    std::to_string(n_cells));
    Grid1D g;
    g.x_left = x_left;
    g.x_right = x_right;
    g.n_cells = n_cells;
    g.dx = (x_right - x_left) / static_cast<double>(n_cells);
    g.parity = Parity::Primal;
    return g;
}

SolutionField::SolutionField(Grid1D grid, std::size_t n_comp, double time)
    : grid_(grid), n_comp_(n_comp), data_(grid.n_cells * n_comp, 0.0), time_(time) {
    if (n_comp == 0) throw std::invalid_argument("SolutionField: n_comp must be positive");
}

SolutionField::SolutionField(Grid1D grid, std::size_t n_comp, std::vector<double> data, double time)
    : grid_(grid), n_comp_(n_comp), data_(std::move(data)), time_(time) {
    if (n_comp == 0) throw std::invalid_argument("SolutionField: n_comp must be positive");
    if (data_.size() != grid_.n_cells * n_comp_)
        throw std::invalid_argument("SolutionField: data size does not match N x d");
}

void SolutionField::set_grid(const Grid1D& g) {
    if (g.n_cells != grid_.n_cells) throw std::invalid_argument("set_grid: cell count mismatch");
    grid_ = g;
}

double SolutionField::integral(std::size_t comp) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_cells(); ++i) s += (*this)(i, comp);
    return s * grid_.dx;
}

double SolutionField::abs_integral(std::size_t comp) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_cells(); ++i) s += std::abs((*this)(i, comp));
    return s * grid_.dx;
}

bool SolutionField::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> SolutionField::component(std::size_t comp) const {
    std::vector<double> out(n_cells());
    for (std::size_t i = 0; i < n_cells(); ++i) out[i] = (*this)(i, comp);
    return out;
}

std::vector<double> pad_with_ghosts(std::span<const double> data, std::size_t n_cells,
                                    std::size_t n_comp, BoundaryKind bc, std::size_t width) {
    if (width < 1 || width > 2) throw std::invalid_argument("pad_with_ghosts: width must be 1 or 2");
    if (n_cells < width || n_cells == 0)
        throw std::invalid_argument("pad_with_ghosts: too few cells for ghost width");
    if (data.size() != n_cells * n_comp)
        throw std::invalid_argument("pad_with_ghosts: data size does not match N x d");

    const std::size_t total = n_cells + 2 * width;
    std::vector<double> out(total * n_comp);
    const auto n = static_cast<long>(n_cells);
    for (std::size_t j = 0; j < total; ++j) {
        long src = static_cast<long>(j) - static_cast<long>(width);
        if (bc == BoundaryKind::Periodic) {
            src = ((src % n) + n) % n;
        } else {
            src = src < 0 ? 0 : (src >= n ? n - 1 : src);
        }
        for (std::size_t k = 0; k < n_comp; ++k)
            out[j * n_comp + k] = data[static_cast<std::size_t>(src) * n_comp + k];
    }
    return out;
}

std::vector<double> pad_with_ghosts(const SolutionField& field, BoundaryKind bc, std::size_t width) {
    return pad_with_ghosts(field.data(), field.n_cells(), field.n_comp(), bc, width);
}

SolutionField project_staggered_to_primal(const SolutionField& field, BoundaryKind bc) {
    if (field.grid().parity != Parity::Staggered)
        throw std::invalid_argument("project_staggered_to_primal: field is not staggered");
    const std::size_t n = field.n_cells();
    const std::size_t d = field.n_comp();
    const auto padded = pad_with_ghosts(field, bc, 1);

    // Primal cell i spans the right half of staggered cell i-1 and the left half of cell i.
    SolutionField out(field.grid().with_parity(Parity::Primal), d, field.time());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            out(i, k) = 0.5 * (padded[i * d + k] + padded[(i + 1) * d + k]);
    return out;
}

SolutionField to_primal(const SolutionField& field, BoundaryKind bc) {
    if (field.grid().parity == Parity::Primal) return field;
    return project_staggered_to_primal(field, bc);
}

}  // namespace ntrelax
