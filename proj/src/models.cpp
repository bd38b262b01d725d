#include "ntrelax/models.hpp"

#include "ntrelax/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ntrelax {

namespace {

State vec(std::initializer_list<double> v) {
    State s(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) s(i++) = x;
    return s;
}

Matrix zeros(std::size_t d) { return Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }

[[noreturn]] void inadmissible(const std::string& model, const std::string& what) {
    throw SolverError(SolverError::Kind::Inadmissible, model + ": " + what);
}

void require_positive_density(const std::string& model, double rho) {
    if (!(rho > 0.0)) inadmissible(model, "non-positive density " + std::to_string(rho));
}

// Conversions validate user input, so they report precondition violations.
void reject_unless(bool ok, const std::string& model, const std::string& what) {
    if (!ok) throw std::invalid_argument(model + ": " + what);
}

State identity(const State& s) { return s; }

}  // namespace

bool ModelSpec::has_source() const {
    for (bool b : stiff_rows)
        if (b) return true;
    return false;
}

double ModelSpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw std::out_of_range(name + ": no parameter '" + key + "'");
    return it->second;
}

double ideal_gas_pressure(double gamma, const State& u) {
    return (gamma - 1.0) * (u(2) - 0.5 * u(1) * u(1) / u(0));
}

ModelSpec jinxin_spec(double a) {
    if (!(std::abs(a) < 1.0))
        throw std::invalid_argument("jinxin_spec: subcharacteristic condition |a| < 1 violated");
    ModelSpec m;
    m.name = "jinxin";
    m.dim = 2;
    m.component_names = {"u", "v"};
    m.primitive_names = {"u", "v"};
    m.params = {{"a", a}};
    m.flux = [](const State& u) { return vec({u(1), u(0)}); };
    m.source_g = [a](const State& u) { return vec({0.0, -(u(1) - a * u(0))}); };
    m.source_jacobian = [a](const State&) {
        Matrix j = zeros(2);
        j(1, 0) = a;
        j(1, 1) = -1.0;
        return j;
    };
    m.max_wave_speed = [](const State&) { return 1.0; };
    m.equilibrium = [a](const State& u) { return vec({u(0), a * u(0)}); };
    m.admissible = [](const State& u) { return u.allFinite(); };
    m.to_conserved = identity;
    m.to_primitive = identity;
    m.stiff_rows = {false, true};
    return m;
}

ModelSpec shallow_water_spec() {
    ModelSpec m;
    m.name = "shallow-water";
    m.dim = 2;
    m.component_names = {"h", "hu"};
    m.primitive_names = {"h", "u"};
    m.flux = [](const State& u) {
        if (!(u(0) > 0.0)) inadmissible("shallow-water", "non-positive height");
        return vec({u(1), u(1) * u(1) / u(0) + 0.5 * u(0) * u(0)});
    };
    m.source_g = [](const State& u) { return vec({0.0, -(u(1) - 0.5 * u(0) * u(0))}); };
    m.source_jacobian = [](const State& u) {
        Matrix j = zeros(2);
        j(1, 0) = u(0);
        j(1, 1) = -1.0;
        return j;
    };
    m.max_wave_speed = [](const State& u) { return std::abs(u(1) / u(0)) + std::sqrt(u(0)); };
    m.equilibrium = [](const State& u) { return vec({u(0), 0.5 * u(0) * u(0)}); };
    m.admissible = [](const State& u) { return u.allFinite() && u(0) > 0.0; };
    m.to_conserved = [](const State& p) {
        reject_unless(p(0) > 0.0, "shallow-water", "non-positive density");
        return vec({p(0), p(0) * p(1)});
    };
    m.to_primitive = [](const State& u) {
        reject_unless(u(0) > 0.0, "shallow-water", "non-positive density");
        return vec({u(0), u(1) / u(0)});
    };
    m.stiff_rows = {false, true};
    return m;
}

ModelSpec broadwell_spec() {
    ModelSpec m;
    m.name = "broadwell";
    m.dim = 3;
    m.component_names = {"rho", "m", "z"};
    m.primitive_names = {"rho", "u", "z"};
    m.flux = [](const State& u) { return vec({u(1), u(2), u(1)}); };
    m.source_g = [](const State& u) {
        return vec({0.0, 0.0, 0.5 * (u(0) * u(0) + u(1) * u(1) - 2.0 * u(0) * u(2))});
    };
    m.source_jacobian = [](const State& u) {
        Matrix j = zeros(3);
        j(2, 0) = u(0) - u(2);
        j(2, 1) = u(1);
        j(2, 2) = -u(0);
        return j;
    };
    m.max_wave_speed = [](const State&) { return 1.0; };
    m.equilibrium = [](const State& u) {
        return vec({u(0), u(1), (u(0) * u(0) + u(1) * u(1)) / (2.0 * u(0))});
    };
    m.admissible = [](const State& u) { return u.allFinite() && u(0) > 0.0; };
    m.to_conserved = [](const State& p) {
        reject_unless(p(0) > 0.0, "broadwell", "non-positive density");
        return vec({p(0), p(0) * p(1), p(2)});
    };
    m.to_primitive = [](const State& u) {
        reject_unless(u(0) > 0.0, "broadwell", "non-positive density");
        return vec({u(0), u(1) / u(0), u(2)});
    };
    m.stiff_rows = {false, false, true};
    return m;
}

namespace {

// Shared ideal-gas pieces of the three-equation Euler models.
void attach_ideal_gas(ModelSpec& m, double gamma) {
    const std::string name = m.name;
    m.component_names = {"rho", "rhou", "rhoE"};
    m.primitive_names = {"rho", "u", "p"};
    m.flux = [gamma, name](const State& u) {
        require_positive_density(name, u(0));
        const double vel = u(1) / u(0);
        const double p = ideal_gas_pressure(gamma, u);
        return vec({u(1), u(1) * vel + p, (u(2) + p) * vel});
    };
    m.max_wave_speed = [gamma](const State& u) {
        const double p = ideal_gas_pressure(gamma, u);
        return std::abs(u(1) / u(0)) + std::sqrt(gamma * std::max(p, 0.0) / u(0));
    };
    m.admissible = [gamma](const State& u) {
        return u.allFinite() && u(0) > 0.0 && ideal_gas_pressure(gamma, u) > 0.0;
    };
    m.to_conserved = [gamma, name](const State& p) {
        reject_unless(p(0) > 0.0, name, "non-positive density");
        reject_unless(p(2) > 0.0, name, "non-positive pressure");
        return vec({p(0), p(0) * p(1), p(2) / (gamma - 1.0) + 0.5 * p(0) * p(1) * p(1)});
    };
    m.to_primitive = [gamma, name](const State& u) {
        reject_unless(u(0) > 0.0, name, "non-positive density");
        const double p = ideal_gas_pressure(gamma, u);
        reject_unless(p > 0.0, name, "non-positive pressure");
        return vec({u(0), u(1) / u(0), p});
    };
}

}  // namespace

ModelSpec euler_heat_spec(double gamma, double cv, double t0) {
    if (!(gamma > 1.0)) throw std::invalid_argument("euler_heat_spec: gamma must exceed 1");
    if (!(cv > 0.0)) throw std::invalid_argument("euler_heat_spec: c_v must be positive");
    if (!(t0 > 0.0)) throw std::invalid_argument("euler_heat_spec: T0 must be positive");
    ModelSpec m;
    m.name = "euler-heat";
    m.dim = 3;
    m.params = {{"gamma", gamma}, {"cv", cv}, {"T0", t0}};
    attach_ideal_gas(m, gamma);
    m.source_g = [cv, t0](const State& u) {
        const double internal = u(2) - 0.5 * u(1) * u(1) / u(0);
        return vec({0.0, 0.0, u(0) * t0 - internal / cv});
    };
    m.source_jacobian = [cv, t0](const State& u) {
        Matrix j = zeros(3);
        const double vel = u(1) / u(0);
        j(2, 0) = t0 - 0.5 * vel * vel / cv;
        j(2, 1) = vel / cv;
        j(2, 2) = -1.0 / cv;
        return j;
    };
    m.equilibrium = [cv, t0](const State& u) {
        return vec({u(0), u(1), cv * u(0) * t0 + 0.5 * u(1) * u(1) / u(0)});
    };
    m.stiff_rows = {false, false, true};
    return m;
}

ModelSpec euler_friction_spec(double gamma, double alpha) {
    if (!(gamma > 1.0)) throw std::invalid_argument("euler_friction_spec: gamma must exceed 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("euler_friction_spec: alpha must be positive");
    ModelSpec m;
    m.name = "euler-friction";
    m.dim = 3;
    m.params = {{"gamma", gamma}, {"alpha", alpha}};
    attach_ideal_gas(m, gamma);
    m.source_g = [](const State& u) { return vec({0.0, -u(1), -u(1) * u(1) / u(0)}); };
    m.source_jacobian = [](const State& u) {
        Matrix j = zeros(3);
        const double vel = u(1) / u(0);
        j(1, 1) = -1.0;
        j(2, 0) = vel * vel;
        j(2, 1) = -2.0 * vel;
        return j;
    };
    m.equilibrium = [](const State& u) { return vec({u(0), 0.0, u(2)}); };
    // g_3 depends on rho u only: lower triangular in the stiff unknowns (rho u, rho E).
    m.stiff_rows = {false, true, true};
    return m;
}

ModelSpec euler_isentropic_spec(double gamma, double k, double alpha) {
    if (!(gamma > 1.0)) throw std::invalid_argument("euler_isentropic_spec: gamma must exceed 1");
    if (!(k > 0.0)) throw std::invalid_argument("euler_isentropic_spec: k must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("euler_isentropic_spec: alpha must be positive");
    ModelSpec m;
    m.name = "euler-isentropic";
    m.dim = 2;
    m.component_names = {"rho", "rhou"};
    m.primitive_names = {"rho", "u"};
    m.params = {{"gamma", gamma}, {"k", k}, {"alpha", alpha}};
    m.flux = [gamma, k](const State& u) {
        require_positive_density("euler-isentropic", u(0));
        return vec({u(1), u(1) * u(1) / u(0) + k * std::pow(u(0), gamma)});
    };
    m.source_g = [](const State& u) { return vec({0.0, -u(1)}); };
    m.source_jacobian = [](const State&) {
        Matrix j = zeros(2);
        j(1, 1) = -1.0;
        return j;
    };
    m.max_wave_speed = [gamma, k](const State& u) {
        return std::abs(u(1) / u(0)) + std::sqrt(gamma * k * std::pow(u(0), gamma - 1.0));
    };
    m.equilibrium = [](const State& u) { return vec({u(0), 0.0}); };
    m.admissible = [](const State& u) { return u.allFinite() && u(0) > 0.0; };
    m.to_conserved = [](const State& p) {
        reject_unless(p(0) > 0.0, "euler-isentropic", "non-positive density");
        return vec({p(0), p(0) * p(1)});
    };
    m.to_primitive = [](const State& u) {
        reject_unless(u(0) > 0.0, "euler-isentropic", "non-positive density");
        return vec({u(0), u(1) / u(0)});
    };
    m.stiff_rows = {false, true};
    return m;
}

ModelSpec advection_spec(double c) {
    ModelSpec m;
    m.name = "advection";
    m.dim = 1;
    m.component_names = {"u"};
    m.primitive_names = {"u"};
    m.params = {{"c", c}};
    m.flux = [c](const State& u) { return vec({c * u(0)}); };
    m.source_g = [](const State&) { return vec({0.0}); };
    m.source_jacobian = [](const State&) { return zeros(1); };
    m.max_wave_speed = [c](const State&) { return std::abs(c); };
    m.equilibrium = identity;
    m.admissible = [](const State& u) { return u.allFinite(); };
    m.to_conserved = identity;
    m.to_primitive = identity;
    m.stiff_rows = {false};
    return m;
}

ModelSpec linear_decay_spec() {
    ModelSpec m;
    m.name = "linear-decay";
    m.dim = 1;
    m.component_names = {"y"};
    m.primitive_names = {"y"};
    m.flux = [](const State&) { return vec({0.0}); };
    m.source_g = [](const State& u) { return vec({-u(0)}); };
    m.source_jacobian = [](const State&) { return Matrix::Constant(1, 1, -1.0); };
    m.max_wave_speed = [](const State&) { return 0.0; };
    m.equilibrium = [](const State&) { return vec({0.0}); };
    m.admissible = [](const State& u) { return u.allFinite(); };
    m.to_conserved = identity;
    m.to_primitive = identity;
    m.stiff_rows = {true};
    return m;
}

ModelSpec trivial_spec(std::size_t dim) {
    if (dim == 0 || dim > static_cast<std::size_t>(kMaxComponents))
        throw std::invalid_argument("trivial_spec: unsupported dimension");
    ModelSpec m;
    m.name = "trivial";
    m.dim = dim;
    for (std::size_t k = 0; k < dim; ++k) {
        m.component_names.push_back("q" + std::to_string(k));
    }
    m.primitive_names = m.component_names;
    const auto d = static_cast<Eigen::Index>(dim);
    m.flux = [d](const State&) { return State(State::Zero(d)); };
    m.source_g = [d](const State&) { return State(State::Zero(d)); };
    m.source_jacobian = [dim](const State&) { return zeros(dim); };
    m.max_wave_speed = [](const State&) { return 0.0; };
    m.equilibrium = identity;
    m.admissible = [](const State& u) { return u.allFinite(); };
    m.to_conserved = identity;
    m.to_primitive = identity;
    m.stiff_rows.assign(dim, false);
    return m;
}

ModelSpec without_source(const ModelSpec& model) {
    ModelSpec m = model;
    m.name = model.name + "-nosource";
    const auto d = static_cast<Eigen::Index>(model.dim);
    const std::size_t dim = model.dim;
    m.source_g = [d](const State&) { return State(State::Zero(d)); };
    m.source_jacobian = [dim](const State&) { return zeros(dim); };
    m.equilibrium = identity;
    m.stiff_rows.assign(dim, false);
    return m;
}

State primitive_to_conserved(const ModelSpec& model, const State& prim) {
    if (static_cast<std::size_t>(prim.size()) != model.dim)
        throw std::invalid_argument(model.name + ": primitive state has wrong dimension");
    return model.to_conserved(prim);
}

State conserved_to_primitive(const ModelSpec& model, const State& cons) {
    if (static_cast<std::size_t>(cons.size()) != model.dim)
        throw std::invalid_argument(model.name + ": conserved state has wrong dimension");
    return model.to_primitive(cons);
}

}  // namespace ntrelax
