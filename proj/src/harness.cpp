#include "ntrelax/harness.hpp"

#include "ntrelax/imex.hpp"
#include "ntrelax/io.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ntrelax {

namespace {

constexpr double kPi = std::numbers::pi;

State vec3(double a, double b, double c, std::size_t d) {
    State s(static_cast<Eigen::Index>(d));
    s(0) = a;
    if (d > 1) s(1) = b;
    if (d > 2) s(2) = c;
    return s;
}

std::vector<ExperimentPreset> catalog() {
    std::vector<ExperimentPreset> out;

    ExperimentPreset jx;
    jx.id = "jinxin-smooth-wp";
    jx.model = "jinxin";
    jx.ic = "sine";
    jx.params = {{"a", 0.7}, {"v_ratio", 0.7}};
    jx.t_final = 0.35;
    jx.cfl = 1.0 / 3.0;
    jx.eps = 1e-10;
    jx.n_cells = 320;
    jx.eps_list = {1e-10, 1e-8, 1e-7};
    out.push_back(jx);

    ExperimentPreset jxu = jx;
    jxu.id = "jinxin-smooth-unprep";
    jxu.params["v_ratio"] = 0.1;
    jxu.cfl = 0.9;
    jxu.eps_list = {1e-10};
    out.push_back(jxu);

    ExperimentPreset jxr = jx;
    jxr.id = "jinxin-riemann";
    jxr.ic = "square";
    jxr.params = {{"a", 0.7}};
    jxr.n_cells = 200;
    jxr.eps_list = {1e-10, 1e-8, 1e-7};
    out.push_back(jxr);

    ExperimentPreset sw;
    sw.id = "sw-smooth";
    sw.model = "shallow-water";
    sw.ic = "sw-sine";
    sw.t_final = 0.3;
    sw.cfl = 0.9;
    sw.eps = 1e-8;
    sw.n_cells = 320;
    sw.reference = "imex:3200";
    sw.sampling = Sampling::CellAverage;
    out.push_back(sw);

    ExperimentPreset swr = sw;
    swr.id = "sw-riemann";
    swr.ic = "sw-dam";
    swr.x_left = -1.0;
    swr.x_right = 1.0;
    swr.bc = BoundaryKind::Transmissive;
    swr.t_final = 0.5;
    out.push_back(swr);

    ExperimentPreset bw;
    bw.id = "broadwell-smooth";
    bw.model = "broadwell";
    bw.ic = "broadwell-sine";
    bw.t_final = 0.3;
    bw.cfl = 0.9;
    bw.eps = 1e-8;
    bw.n_cells = 320;
    bw.eps_list = {1e-8, 0.02, 1.0};
    bw.reference = "imex:3200";
    bw.sampling = Sampling::CellAverage;
    out.push_back(bw);

    ExperimentPreset bwr = bw;
    bwr.id = "broadwell-riemann";
    bwr.ic = "broadwell-riemann";
    bwr.x_left = -1.0;
    bwr.x_right = 1.0;
    bwr.bc = BoundaryKind::Transmissive;
    bwr.t_final = 0.5;
    bwr.n_cells = 200;
    out.push_back(bwr);

    ExperimentPreset eh;
    eh.id = "euler-heat-riemann";
    eh.model = "euler-heat";
    eh.ic = "euler-heat-riemann";
    eh.params = {{"gamma", 1.4}, {"cv", 1.0 / 0.4}, {"T0", 1.0}};
    eh.bc = BoundaryKind::Transmissive;
    eh.t_final = 0.3;
    eh.cfl = 0.9;
    eh.eps = 1e-8;
    eh.n_cells = 200;
    eh.eps_list = {1e-8};
    eh.reference = "imex:3200";
    eh.sampling = Sampling::CellAverage;
    out.push_back(eh);

    ExperimentPreset ef = eh;
    ef.id = "euler-friction-riemann";
    ef.model = "euler-friction";
    ef.ic = "friction-riemann";
    ef.params = {{"gamma", 1.4}};
    ef.t_final = 2.0;
    ef.n_cells = 1000;
    ef.reference = "imex:4000";
    out.push_back(ef);

    ExperimentPreset ei = ef;
    ei.id = "euler-isentropic-riemann";
    ei.model = "euler-isentropic";
    ei.params = {{"gamma", 1.4}, {"k", 1.0}};
    out.push_back(ei);

    ExperimentPreset cst;
    cst.id = "constant";
    cst.model = "broadwell";
    cst.ic = "constant";
    cst.params = {{"c0", 1.0}, {"c1", 0.5}, {"c2", 0.625}};
    cst.t_final = 0.2;
    cst.n_cells = 64;
    cst.eps_list = {1e-8};
    out.push_back(cst);

    return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string join_reals(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
    return s;
}

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument(key + ": not a number: '" + text + "'");
    return v;
}

std::size_t parse_size(const std::string& key, const std::string& text) {
    const double v = parse_real(key, text);
    if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument(key + ": expected a positive integer");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::size_t reference_fine_cells(const std::string& ref) {
    if (ref.rfind("imex:", 0) != 0) return 0;
    return parse_size("reference", ref.substr(5));
}

// Conserved state of the preset's initial condition at x.
std::function<State(double)> ic_profile(const ExperimentPreset& p, const ModelSpec& model) {
    const std::size_t d = model.dim;
    const std::string& ic = p.ic;
    if (ic == "sine") {
        const double r = p.param("v_ratio");
        return [r](double x) {
            const double u = std::sin(2.0 * kPi * x);
            return vec3(u, r * u, 0.0, 2);
        };
    }
    if (ic == "square") {
        const double a = p.param("a");
        return [a](double x) {
            const double u = (x > 0.25 && x < 0.5) ? 2.0 : 1.0;
            return vec3(u, a * u, 0.0, 2);
        };
    }
    if (ic == "sw-sine") {
        return [](double x) {
            const double h = 1.0 + 0.2 * std::sin(8.0 * kPi * x);
            return vec3(h, 0.5 * h * h, 0.0, 2);
        };
    }
    if (ic == "sw-dam") {
        return [](double x) {
            const double h = (x > 0.0 && x < 0.2) ? 1.0 : 0.2;
            return vec3(h, -0.5 * h * h, 0.0, 2);
        };
    }
    if (ic == "broadwell-sine") {
        return [](double x) {
            const double s = std::sin(2.0 * kPi * x);
            const double rho = 1.0 + 0.3 * s;
            const double u = 0.5 + 0.1 * s;
            return vec3(rho, rho * u, 0.5 * rho * (1.0 + u * u), 3);
        };
    }
    if (ic == "broadwell-riemann") {
        return [](double x) { return x <= 0.2 ? vec3(2.0, 1.0, 1.0, 3) : vec3(1.0, 0.13962, 1.0, 3); };
    }
    if (ic == "euler-heat-riemann") {
        // (rho, u, E) with E the specific total energy.
        return [](double x) {
            const double rho = x <= 0.5 ? 1.0 : 0.125;
            return vec3(rho, 0.0, rho * 1.0, 3);
        };
    }
    if (ic == "friction-riemann") {
        const State left = model.to_conserved(d == 3 ? vec3(1.65, 0.0, 5.039849068, 3) : vec3(1.65, 0.0, 0.0, 2));
        const State right = model.to_conserved(d == 3 ? vec3(0.01, 0.0, 0.003962233, 3) : vec3(0.01, 0.0, 0.0, 2));
        return [left, right](double x) { return x <= 0.25 ? left : right; };
    }
    if (ic == "constant") {
        const State c = vec3(p.param("c0"), d > 1 ? p.param("c1") : 0.0, d > 2 ? p.param("c2") : 0.0, d);
        return [c](double) { return c; };
    }
    throw std::invalid_argument("unknown initial condition '" + ic + "'");
}

}  // namespace

double ExperimentPreset::param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument("preset " + id + ": missing parameter '" + key + "'");
    return it->second;
}

SchemeConfig ExperimentPreset::scheme_config() const {
    SchemeConfig c;
    c.cfl = cfl;
    c.eps = eps;
    c.bc = bc;
    c.t_final = t_final;
    c.projection = projection;
    c.limiter = limiter;
    return c;
}

std::vector<std::string> preset_ids() {
    std::vector<std::string> ids;
    for (const auto& p : catalog()) ids.push_back(p.id);
    return ids;
}

ExperimentPreset preset(const std::string& id) {
    for (auto& p : catalog())
        if (p.id == id) return p;
    std::string valid;
    for (const auto& v : preset_ids()) valid += (valid.empty() ? "" : ", ") + v;
    throw std::invalid_argument("unknown preset '" + id + "'; valid ids: " + valid);
}

std::string preset_to_config(const ExperimentPreset& p) {
    std::string s;
    const auto put = [&s](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
    put("id", p.id);
    put("model", p.model);
    put("ic", p.ic);
    for (const auto& [k, v] : p.params) put("param." + k, format_real(v));
    put("x_left", format_real(p.x_left));
    put("x_right", format_real(p.x_right));
    put("bc", std::string(to_string(p.bc)));
    put("t_final", format_real(p.t_final));
    put("cfl", format_real(p.cfl));
    put("eps", format_real(p.eps));
    put("N", std::to_string(p.n_cells));
    put("grids", join_sizes(p.grids));
    put("eps_list", join_reals(p.eps_list));
    put("reference", p.reference);
    put("sampling", p.sampling == Sampling::PointValue ? "point" : "average");
    put("projection", std::string(to_string(p.projection)));
    put("limiter", std::string(to_string(p.limiter)));
    return s;
}

ExperimentPreset preset_from_config(const std::map<std::string, std::string>& kv, const ExperimentPreset& base) {
    ExperimentPreset p = base;
    if (const auto it = kv.find("preset"); it != kv.end()) p = preset(it->second);
    for (const auto& [k, v] : kv) {
        if (k == "preset") continue;
        if (k == "id") p.id = v;
        else if (k == "model") p.model = v;
        else if (k == "ic") p.ic = v;
        else if (k.rfind("param.", 0) == 0) p.params[k.substr(6)] = parse_real(k, v);
        else if (k == "x_left") p.x_left = parse_real(k, v);
        else if (k == "x_right") p.x_right = parse_real(k, v);
        else if (k == "bc") p.bc = parse_boundary(v);
        else if (k == "t_final") p.t_final = parse_real(k, v);
        else if (k == "cfl") p.cfl = parse_real(k, v);
        else if (k == "eps") p.eps = parse_real(k, v);
        else if (k == "N") p.n_cells = parse_size(k, v);
        else if (k == "grids") {
            p.grids.clear();
            for (const auto& g : split_list(v)) p.grids.push_back(parse_size(k, g));
        } else if (k == "eps_list") {
            p.eps_list.clear();
            for (const auto& e : split_list(v)) p.eps_list.push_back(parse_real(k, e));
        } else if (k == "reference") {
            if (v != "exact") reference_fine_cells(v);
            if (v != "exact" && v.rfind("imex:", 0) != 0)
                throw std::invalid_argument("reference: expected exact or imex:<N>");
            p.reference = v;
        } else if (k == "sampling") {
            if (v == "point") p.sampling = Sampling::PointValue;
            else if (v == "average") p.sampling = Sampling::CellAverage;
            else throw std::invalid_argument("sampling: expected point or average");
        } else if (k == "projection") p.projection = parse_projection(v);
        else if (k == "limiter") p.limiter = parse_limiter(v);
        else throw std::invalid_argument("unknown config key '" + k + "'");
    }
    return p;
}

ModelSpec make_model(const ExperimentPreset& p) {
    const auto get = [&p](const std::string& k, double fallback) {
        const auto it = p.params.find(k);
        return it == p.params.end() ? fallback : it->second;
    };
    if (p.model == "jinxin") return jinxin_spec(get("a", 0.7));
    if (p.model == "shallow-water") return shallow_water_spec();
    if (p.model == "broadwell") return broadwell_spec();
    if (p.model == "euler-heat") {
        const double gamma = get("gamma", 1.4);
        return euler_heat_spec(gamma, get("cv", 1.0 / (gamma - 1.0)), get("T0", 1.0));
    }
    if (p.model == "euler-friction") return euler_friction_spec(get("gamma", 1.4), 1.0 / p.eps);
    if (p.model == "euler-isentropic") return euler_isentropic_spec(get("gamma", 1.4), get("k", 1.0), 1.0 / p.eps);
    if (p.model == "advection") return advection_spec(get("c", 1.0));
    if (p.model == "trivial") return trivial_spec(static_cast<std::size_t>(get("dim", 1.0)));
    throw std::invalid_argument("unknown model '" + p.model +
                                "' (jinxin, shallow-water, broadwell, euler-heat, euler-friction, "
                                "euler-isentropic, advection, trivial)");
}

SolutionField initial_field(const ExperimentPreset& p, std::size_t n_cells) {
    const ModelSpec model = make_model(p);
    const Grid1D grid = make_grid(p.x_left, p.x_right, n_cells);
    const auto profile = ic_profile(p, model);
    SolutionField f(grid, model.dim, 0.0);
    // 4-point Gauss-Legendre nodes and weights on [-1/2, 1/2].
    static constexpr double node[4] = {-0.4305681557970263, -0.1699905217924281, 0.1699905217924281,
                                       0.4305681557970263};
    static constexpr double weight[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                                         0.1739274225687269};
    for (std::size_t i = 0; i < n_cells; ++i) {
        State u;
        if (p.sampling == Sampling::PointValue) {
            u = profile(grid.center(i));
        } else {
            u = State::Zero(static_cast<Eigen::Index>(model.dim));
            for (int q = 0; q < 4; ++q) u += weight[q] * profile(grid.center(i) + node[q] * grid.dx);
        }
        if (!model.admissible(u)) throw std::invalid_argument("initial state is not admissible for " + model.name);
        for (std::size_t k = 0; k < model.dim; ++k) f(i, k) = u(static_cast<Eigen::Index>(k));
    }
    return f;
}

std::vector<std::pair<std::string, std::string>> csv_metadata(const ExperimentPreset& p, std::size_t n_cells) {
    return {{"model", p.model},
            {"N", std::to_string(n_cells)},
            {"cfl", format_real(p.cfl)},
            {"eps", format_real(p.eps)},
            {"t_final", format_real(p.t_final)},
            {"bc", std::string(to_string(p.bc))},
            {"scheme", "cs-ebt2"},
            {"version", kVersion},
            {"preset", p.id},
            {"ic", p.ic},
            {"limiter", std::string(to_string(p.limiter))}};
}

SimulationResult run_simulation(const ExperimentPreset& p) {
    const ModelSpec model = make_model(p);
    const SolutionField u0 = initial_field(p, p.n_cells);
    SimulationResult r;
    r.summary = evolve(model, u0, p.scheme_config());
    r.primal = r.summary.final_primal(p.bc);
    r.csv = solution_csv(r.primal, model.component_names, csv_metadata(p, p.n_cells));
    return r;
}

SolutionField reference_solution(const ExperimentPreset& p, const Grid1D& target, double eps,
                                 std::map<double, SolutionField>* cache) {
    if (p.reference == "exact") {
        if (p.model == "jinxin" && p.ic == "sine") {
            const double a = p.param("a");
            return jinxin_exact(a, eps, sine_modes(1.0, p.param("v_ratio")), p.t_final, target);
        }
        if (p.model == "jinxin" && p.ic == "square") {
            return advected_exact([](double x) { return (x > 0.25 && x < 0.5) ? 2.0 : 1.0; }, p.param("a"),
                                  p.t_final, target);
        }
        if (p.ic == "constant") {
            ExperimentPreset q = p;
            q.x_left = target.x_left;
            q.x_right = target.x_right;
            SolutionField f = initial_field(q, target.n_cells);
            f.set_grid(target);
            f.set_time(p.t_final);
            return f;
        }
        throw std::invalid_argument("no exact solution for preset " + p.id + "; use reference=imex:<N>");
    }
    const std::size_t n_fine = reference_fine_cells(p.reference);
    if (n_fine == 0) throw std::invalid_argument("bad reference '" + p.reference + "'");
    SolutionField fine;
    if (cache) {
        if (const auto it = cache->find(eps); it != cache->end()) fine = it->second;
    }
    if (fine.n_cells() == 0) {
        ExperimentPreset q = p;
        q.eps = eps;
        SchemeConfig cfg = q.scheme_config();
        cfg.cfl = 0.5;
        fine = reference_run(make_model(q), initial_field(q, n_fine), cfg);
        if (cache) (*cache)[eps] = fine;
    }
    return restrict_block_average(fine, target, p.bc);
}

const ConvergenceRow& ConvergenceTable::at(double eps, std::size_t n) const {
    for (const auto& r : rows)
        if (r.eps == eps && r.n_cells == n) return r;
    throw std::out_of_range("convergence table has no row for eps=" + format_real(eps) + " N=" + std::to_string(n));
}

std::string ConvergenceTable::csv(const std::vector<std::pair<std::string, std::string>>& meta) const {
    std::string s;
    for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
    s += "eps,N";
    for (const auto& c : components) s += ",err_" + c + ",order_" + c;
    s += "\n";
    for (const auto& r : rows) {
        s += format_real(r.eps) + "," + std::to_string(r.n_cells);
        for (std::size_t k = 0; k < components.size(); ++k)
            s += "," + format_real(r.errors[k]) + "," + (std::isnan(r.orders[k]) ? std::string("nan") : format_real(r.orders[k]));
        s += "\n";
    }
    return s;
}

ConvergenceTable run_convergence(const ExperimentPreset& p, const std::vector<std::size_t>& grids,
                                 const std::vector<double>& eps_list, unsigned threads) {
    if (grids.empty() || eps_list.empty()) throw std::invalid_argument("run_convergence: empty grid or eps list");
    for (std::size_t i = 1; i < grids.size(); ++i)
        if (grids[i] != 2 * grids[i - 1]) throw std::invalid_argument("run_convergence: grids must be successive doublings");

    const ModelSpec probe = make_model(p);
    ConvergenceTable table;
    table.components = probe.component_names;

    struct Job {
        double eps;
        std::size_t n;
    };
    std::vector<Job> jobs;
    for (double e : eps_list)
        for (std::size_t n : grids) jobs.push_back({e, n});
    std::vector<ConvergenceRow> rows(jobs.size());

    // Fine references are computed once per eps, before the test runs fan out.
    std::map<double, SolutionField> cache;
    if (p.reference != "exact") {
        for (double e : eps_list) reference_solution(p, make_grid(p.x_left, p.x_right, grids.front()), e, &cache);
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr failure;
    const auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                ExperimentPreset q = p;
                q.eps = jobs[j].eps;
                const ModelSpec model = make_model(q);
                const RunSummary s = evolve(model, initial_field(q, jobs[j].n), q.scheme_config());
                const SolutionField ref = reference_solution(q, s.final_native.grid(), q.eps, &cache);
                rows[j] = {q.eps, jobs[j].n, l1_error(s.final_native, ref), {}, s.steps};
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t j = 0; j < rows.size(); ++j) {
        rows[j].orders.assign(table.components.size(), std::numeric_limits<double>::quiet_NaN());
        if (j > 0 && rows[j - 1].eps == rows[j].eps)
            for (std::size_t k = 0; k < table.components.size(); ++k)
                rows[j].orders[k] = observed_order(rows[j - 1].errors[k], rows[j].errors[k]);
    }
    table.rows = std::move(rows);
    return table;
}

std::vector<std::string> run_stability(const StabilityOptions& opts, const std::string& prefix) {
    const std::string phi0_path = prefix + "phi0_region.csv";
    const std::string s1_path = prefix + "s1_region.csv";
    export_region_csv(compute_phi0_region(opts.phi0_axes), phi0_path);
    export_region_csv(compute_S1(opts.s1_axes, opts.y_max, opts.per_decade, opts.threads), s1_path);
    return {phi0_path, s1_path};
}

unsigned threads_from_env() {
    const char* v = std::getenv("NTRELAX_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) return 1;
    return static_cast<unsigned>(std::min<long>(n, 256));
}

}  // namespace ntrelax
