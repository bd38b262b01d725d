#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ntrelax {

/// Which of the two interleaved NT grids a set of cell averages lives on.
/// Staggered centers sit half a cell to the right of the primal centers.
enum class Parity { Primal, Staggered };

enum class BoundaryKind { Periodic, Transmissive };

Parity flipped(Parity p);
std::string_view to_string(Parity p);
std::string_view to_string(BoundaryKind bc);
BoundaryKind parse_boundary(std::string_view text);

/// Uniform partition of [x_left, x_right] into n_cells cells.
struct Grid1D {
    double x_left = 0.0;
    double x_right = 1.0;
    std::size_t n_cells = 0;
    double dx = 0.0;
    Parity parity = Parity::Primal;

    /// Cell center i on this grid's parity.
    double center(std::size_t i) const;
    /// Left face of cell i.
    double left_face(std::size_t i) const;
    double length() const { return x_right - x_left; }

    Grid1D with_parity(Parity p) const;
    bool same_cells(const Grid1D& other) const;
};

/// Throws std::invalid_argument for n_cells < 4 or a degenerate domain.
Grid1D make_grid(double x_left, double x_right, std::size_t n_cells);

/// Cell averages of d conserved components, stored cell-major (N x d).
class SolutionField {
public:
    SolutionField() = default;
    SolutionField(Grid1D grid, std::size_t n_comp, double time = 0.0);
    SolutionField(Grid1D grid, std::size_t n_comp, std::vector<double> data, double time = 0.0);

    const Grid1D& grid() const { return grid_; }
    std::size_t n_cells() const { return grid_.n_cells; }
    std::size_t n_comp() const { return n_comp_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }
    void set_grid(const Grid1D& g);

    double& operator()(std::size_t cell, std::size_t comp) { return data_[cell * n_comp_ + comp]; }
    double operator()(std::size_t cell, std::size_t comp) const { return data_[cell * n_comp_ + comp]; }

    std::span<double> cell(std::size_t i) { return {data_.data() + i * n_comp_, n_comp_}; }
    std::span<const double> cell(std::size_t i) const { return {data_.data() + i * n_comp_, n_comp_}; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    /// dx * sum_i U_i[comp]
    double integral(std::size_t comp) const;
    /// dx * sum_i |U_i[comp]|
    double abs_integral(std::size_t comp) const;
    bool all_finite() const;
    std::vector<double> component(std::size_t comp) const;

private:
    Grid1D grid_{};
    std::size_t n_comp_ = 0;
    std::vector<double> data_;
    double time_ = 0.0;
};

/// Extends N x d cell data with `width` ghost cells on each side.
/// Periodic ghosts wrap modulo N; transmissive ghosts copy the nearest interior cell.
std::vector<double> pad_with_ghosts(std::span<const double> data, std::size_t n_cells,
                                    std::size_t n_comp, BoundaryKind bc, std::size_t width);
std::vector<double> pad_with_ghosts(const SolutionField& field, BoundaryKind bc, std::size_t width);

/// Averages neighbouring staggered cells back onto the primal grid.
SolutionField project_staggered_to_primal(const SolutionField& field, BoundaryKind bc);

/// Returns the field on the primal grid, projecting only when needed.
SolutionField to_primal(const SolutionField& field, BoundaryKind bc);

}  // namespace ntrelax
