#include "ntrelax/errors.hpp"
#include "ntrelax/harness.hpp"
#include "ntrelax/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

enum Exit { kOk = 0, kBadArgs = 2, kSolver = 3, kIo = 4 };

// Flags shared by run and convergence. Unset flags leave the preset alone.
struct CommonFlags {
    std::string preset;
    std::string config;
    std::optional<std::string> model, ic, bc, projection, reference, limiter;
    std::optional<std::size_t> n_cells;
    std::optional<double> cfl, eps, t_final;
    std::string out;

    void attach(CLI::App* app) {
        app->add_option("--preset", preset, "Preset id (see `presets`)");
        app->add_option("--config", config, "key=value file applied before the flags");
        app->add_option("--model", model, "jinxin|broadwell|shallow-water|euler-heat|euler-friction|euler-isentropic");
        app->add_option("--ic", ic, "Initial condition name");
        app->add_option("--N", n_cells, "Number of cells")->check(CLI::PositiveNumber);
        app->add_option("--cfl", cfl, "CFL number in (0, 1]");
        app->add_option("--eps", eps, "Relaxation parameter");
        app->add_option("--t-final", t_final, "Final time");
        app->add_option("--bc", bc, "periodic|transmissive");
        app->add_option("--projection", projection, "alternate|every-step");
        app->add_option("--reference", reference, "exact|imex:NFINE");
        app->add_option("--limiter", limiter, "minmod|unlimited");
        app->add_option("--out", out, "Output path (stdout when omitted)");
    }

    ntrelax::ExperimentPreset resolve() const {
        std::map<std::string, std::string> kv;
        if (!config.empty()) kv = ntrelax::parse_key_values(ntrelax::read_file(config));
        if (!preset.empty()) kv["preset"] = preset;
        if (!kv.count("preset") && !kv.count("model")) kv["preset"] = "jinxin-smooth-wp";
        if (!kv.count("preset") && kv.count("model")) kv["preset"] = default_preset_for(kv["model"]);
        if (model) {
            if (!kv.count("preset") || ntrelax::preset(kv["preset"]).model != *model)
                kv["preset"] = default_preset_for(*model);
            kv["model"] = *model;
        }
        auto set = [&kv](const char* key, const auto& v) {
            if (v) kv[key] = *v;
        };
        set("ic", ic);
        set("bc", bc);
        set("projection", projection);
        set("reference", reference);
        set("limiter", limiter);
        if (n_cells) kv["N"] = std::to_string(*n_cells);
        if (cfl) kv["cfl"] = ntrelax::format_real(*cfl);
        if (eps) kv["eps"] = ntrelax::format_real(*eps);
        if (t_final) kv["t_final"] = ntrelax::format_real(*t_final);
        return ntrelax::preset_from_config(kv);
    }

    static std::string default_preset_for(const std::string& model) {
        for (const auto& id : ntrelax::preset_ids())
            if (ntrelax::preset(id).model == model) return id;
        throw std::invalid_argument("unknown model '" + model + "'");
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        ntrelax::write_file_atomic(path, text);
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string::npos ? s.size() : comma;
        if (end > start) out.push_back(s.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CS-EBT2 central scheme for stiff relaxation systems"};
    app.set_version_flag("--version", std::string(ntrelax::kVersion));
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "Run one simulation and write the primal-grid solution CSV");
    run_flags.attach(run);

    CommonFlags conv_flags;
    std::string grids_text, eps_text;
    unsigned conv_threads = 0;
    auto* conv = app.add_subcommand("convergence", "Error/order table against the preset's reference");
    conv_flags.attach(conv);
    conv->add_option("--grids", grids_text, "Comma-separated cell counts, each double the previous");
    conv->add_option("--eps-list", eps_text, "Comma-separated eps values (default: preset list)");
    conv->add_option("--threads", conv_threads, "Worker threads (default NTRELAX_THREADS or 1)");

    std::string stab_prefix = "./";
    double y_max = 1e4;
    std::size_t per_decade = 4000;
    unsigned stab_threads = 0;
    auto* stab = app.add_subcommand("stability", "Write the phi(0,z2) and S1 region CSVs");
    stab->add_option("--out", stab_prefix, "Output prefix; files are <prefix>phi0_region.csv and <prefix>s1_region.csv");
    stab->add_option("--y-max", y_max, "Largest |Im z2| sampled")->check(CLI::PositiveNumber);
    stab->add_option("--per-decade", per_decade, "Samples per decade on the imaginary axis")->check(CLI::PositiveNumber);
    stab->add_option("--threads", stab_threads, "Worker threads (default NTRELAX_THREADS or 1)");

    std::string show;
    auto* presets = app.add_subcommand("presets", "List presets, or print one as key=value lines");
    presets->add_option("--show", show, "Preset id to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (*run) {
            const auto p = run_flags.resolve();
            const auto result = ntrelax::run_simulation(p);
            emit(run_flags.out, result.csv);
            std::fprintf(stderr, "%s N=%zu steps=%zu newton_max=%d dt_halvings=%zu wall=%.3fs\n", p.id.c_str(),
                         p.n_cells, result.summary.steps, result.summary.newton_iters_max,
                         result.summary.dt_halvings, result.summary.wall_seconds);
            if (result.summary.wave_speed_zero) std::fprintf(stderr, "warning: zero wave speed, dt fell back to cfl*dx\n");
        } else if (*conv) {
            auto p = conv_flags.resolve();
            std::vector<std::size_t> grids = p.grids;
            if (!grids_text.empty()) {
                grids.clear();
                for (const auto& g : split_csv(grids_text)) grids.push_back(std::stoul(g));
            }
            std::vector<double> eps_list = p.eps_list;
            if (!eps_text.empty()) {
                eps_list.clear();
                for (const auto& e : split_csv(eps_text)) eps_list.push_back(std::stod(e));
            } else if (conv_flags.eps || eps_list.empty()) {
                eps_list = {p.eps};
            }
            const unsigned threads = conv_threads ? conv_threads : ntrelax::threads_from_env();
            const auto table = ntrelax::run_convergence(p, grids, eps_list, threads);
            auto meta = ntrelax::csv_metadata(p, grids.empty() ? 0 : grids.back());
            meta.emplace_back("reference", p.reference);
            emit(conv_flags.out, table.csv(meta));
        } else if (*stab) {
            ntrelax::StabilityOptions opts;
            opts.y_max = y_max;
            opts.per_decade = per_decade;
            opts.threads = stab_threads ? stab_threads : ntrelax::threads_from_env();
            for (const auto& path : ntrelax::run_stability(opts, stab_prefix)) std::cout << path << '\n';
        } else if (*presets) {
            if (show.empty()) {
                for (const auto& id : ntrelax::preset_ids()) std::cout << id << '\n';
            } else {
                std::cout << ntrelax::preset_to_config(ntrelax::preset(show));
            }
        }
    } catch (const ntrelax::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kSolver;
    } catch (const ntrelax::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadArgs;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: value out of range: %s\n", e.what());
        return kBadArgs;
    }
    return kOk;
}
