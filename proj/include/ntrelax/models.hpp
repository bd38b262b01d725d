#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ntrelax {

inline constexpr int kMaxComponents = 3;

using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxComponents, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxComponents, kMaxComponents>;

/// A balance law U_t + F(U)_x = g(U) / eps.
///
/// `stiff_rows[k]` is false when g_k vanishes identically; those components are updated
/// explicitly by the implicit solvers. `source_affine` is set when the stiff rows of g are
/// affine in the stiff unknowns once the explicit components are fixed, or lower triangular
/// in them, so that Newton terminates after a fixed number of sweeps.
struct ModelSpec {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> component_names;
    std::vector<std::string> primitive_names;

    std::function<State(const State&)> flux;
    std::function<State(const State&)> source_g;
    std::function<Matrix(const State&)> source_jacobian;
    std::function<double(const State&)> max_wave_speed;
    std::function<State(const State&)> equilibrium;
    std::function<bool(const State&)> admissible;
    std::function<State(const State&)> to_conserved;
    std::function<State(const State&)> to_primitive;

    std::vector<bool> stiff_rows;
    bool source_affine = true;
    std::map<std::string, double> params;

    bool has_source() const;
    double param(const std::string& key) const;
};

struct EulerHeatParams {
    double gamma = 1.4;
    double cv = 1.0 / 0.4;
    double t0 = 1.0;
};

ModelSpec jinxin_spec(double a);
ModelSpec shallow_water_spec();
ModelSpec broadwell_spec();
ModelSpec euler_heat_spec(double gamma, double cv, double t0);
ModelSpec euler_friction_spec(double gamma, double alpha);
ModelSpec euler_isentropic_spec(double gamma, double k, double alpha);

/// Scalar u_t + c u_x = 0, no source.
ModelSpec advection_spec(double c);
/// Scalar y' = -y / eps with zero flux and zero wave speed.
ModelSpec linear_decay_spec();
/// d-component model with F = 0 and g = 0.
ModelSpec trivial_spec(std::size_t dim);
/// Copy of `model` with the source removed.
ModelSpec without_source(const ModelSpec& model);

State primitive_to_conserved(const ModelSpec& model, const State& prim);
State conserved_to_primitive(const ModelSpec& model, const State& cons);

/// Ideal-gas pressure (gamma - 1) (rhoE - (rho u)^2 / (2 rho)).
double ideal_gas_pressure(double gamma, const State& u);

/// Friction models take alpha = 1/eps; this returns the eps to use with them.
inline double friction_eps(double alpha) { return 1.0 / alpha; }

}  // namespace ntrelax
