#pragma once

#include "ntrelax/oracles.hpp"
#include "ntrelax/scheme.hpp"
#include "ntrelax/stability.hpp"

#include <map>
#include <string>
#include <vector>

namespace ntrelax {

inline constexpr const char* kVersion = "0.1.0";

/// A fully specified experiment. `params` carries model constants (a, gamma, cv, T0, k) and
/// IC constants (v_ratio, c0..c2); the friction models take alpha = 1 / eps.
struct ExperimentPreset {
    std::string id;
    std::string model;
    std::string ic;
    std::map<std::string, double> params;
    double x_left = 0.0;
    double x_right = 1.0;
    BoundaryKind bc = BoundaryKind::Periodic;
    double t_final = 1.0;
    double cfl = 0.9;
    double eps = 1e-8;
    std::size_t n_cells = 200;
    std::vector<std::size_t> grids{20, 40, 80, 160, 320, 640};
    std::vector<double> eps_list;
    std::string reference = "exact";  // "exact" or "imex:<N_fine>"
    Sampling sampling = Sampling::PointValue;
    ProjectionPolicy projection = ProjectionPolicy::AlternateThenProject;
    Limiter limiter = Limiter::MinMod;

    double param(const std::string& key) const;
    SchemeConfig scheme_config() const;
};

std::vector<std::string> preset_ids();
/// Throws std::invalid_argument listing the valid ids.
ExperimentPreset preset(const std::string& id);

/// `key=value` lines that preset_from_config turns back into the same preset.
std::string preset_to_config(const ExperimentPreset& p);
/// Applies `kv` on top of `base` (or of preset(kv["preset"]) when present).
ExperimentPreset preset_from_config(const std::map<std::string, std::string>& kv,
                                    const ExperimentPreset& base = {});

ModelSpec make_model(const ExperimentPreset& p);
SolutionField initial_field(const ExperimentPreset& p, std::size_t n_cells);

/// Metadata lines written at the top of solution CSVs.
std::vector<std::pair<std::string, std::string>> csv_metadata(const ExperimentPreset& p, std::size_t n_cells);

struct SimulationResult {
    RunSummary summary;
    SolutionField primal;
    std::string csv;
};

/// Runs the scheme to t_final, projects to the primal grid and renders the solution CSV.
SimulationResult run_simulation(const ExperimentPreset& p);

/// Reference solution at t_final on `target` (either parity) for the preset's reference kind.
/// `cache` keeps the fine IMEX field between calls with the same eps.
SolutionField reference_solution(const ExperimentPreset& p, const Grid1D& target, double eps,
                                 std::map<double, SolutionField>* cache = nullptr);

struct ConvergenceRow {
    double eps = 0.0;
    std::size_t n_cells = 0;
    std::vector<double> errors;
    std::vector<double> orders;  // NaN on the coarsest grid
    std::size_t steps = 0;
};

struct ConvergenceTable {
    std::vector<std::string> components;
    std::vector<ConvergenceRow> rows;

    const ConvergenceRow& at(double eps, std::size_t n) const;
    std::string csv(const std::vector<std::pair<std::string, std::string>>& meta = {}) const;
};

/// Errors are measured on the grid parity the run ends on, against the reference sampled or
/// restricted onto that same grid. Independent runs use up to `threads` threads.
ConvergenceTable run_convergence(const ExperimentPreset& p, const std::vector<std::size_t>& grids,
                                 const std::vector<double>& eps_list, unsigned threads = 1);

struct StabilityOptions {
    RegionAxes s1_axes;
    RegionAxes phi0_axes{-4.0, 8.0, 121, -6.0, 6.0, 121};
    double y_max = 1e4;
    std::size_t per_decade = 4000;
    unsigned threads = 1;
};

/// Writes `<prefix>phi0_region.csv` and `<prefix>s1_region.csv`; returns the two paths.
std::vector<std::string> run_stability(const StabilityOptions& opts, const std::string& prefix);

/// Thread count from NTRELAX_THREADS (default 1).
unsigned threads_from_env();

}  // namespace ntrelax
