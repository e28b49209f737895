#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratecomp/adversary.hpp"
#include "ratecomp/report.hpp"

namespace fs = std::filesystem;
using namespace ratecomp;

#ifndef RATECOMP_DEFAULT_CORPUS_DIR
#define RATECOMP_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace {

struct global_opts {
    std::string format = "table";
    std::string out_path;
    std::optional<std::int64_t> horizon;
    std::optional<double> window_frac;
    std::optional<double> limit_tol;
    std::optional<bool> require_vanish;
    std::string corpus_dir;
};

void apply_overrides(experiment_config& cfg, const global_opts& g) {
    if (g.window_frac) cfg.options.estimator.window_frac = *g.window_frac;
    if (g.limit_tol) cfg.options.estimator.limit_tol = *g.limit_tol;
    if (g.require_vanish) cfg.options.require_bounds_vanish = *g.require_vanish;
    if (g.horizon) {
        auto set_h = [&](trace_source& s) {
            std::visit([&](auto& v) { v.horizon = *g.horizon; }, s);
        };
        set_h(cfg.left);
        set_h(cfg.right);
    }
}

int write_output(const std::string& text, const global_opts& g) {
    if (g.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(g.out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open output file " << g.out_path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

int run_one(const experiment_config& cfg0, const global_opts& g) {
    experiment_config cfg = cfg0;
    apply_overrides(cfg, g);
    const experiment_result result = run_experiment(cfg);
    const std::string text = emit(result, emit_format_from_string(g.format));
    if (const int rc = write_output(text, g); rc != 0) return rc;
    return result_exit_code(result);
}

fs::path resolve_corpus_dir(const global_opts& g) {
    if (!g.corpus_dir.empty()) return g.corpus_dir;
    if (fs::is_directory("corpus")) return "corpus";
    return RATECOMP_DEFAULT_CORPUS_DIR;
}

int corpus_list(const global_opts& g) {
    const fs::path dir = resolve_corpus_dir(g);
    if (!fs::is_directory(dir)) {
        std::cerr << "error: corpus directory not found: " << dir << "\n";
        return 1;
    }
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) std::cout << n << "\n";
    return 0;
}

int corpus_run(const std::string& name, const global_opts& g) {
    const fs::path path = resolve_corpus_dir(g) / (name + ".json");
    if (!fs::is_regular_file(path)) {
        std::cerr << "error: no corpus entry named '" << name << "' (looked at " << path
                  << ")\n";
        return 1;
    }
    return run_one(load_config(path.string()), g);
}

// Forces the adversarial construction in both directions and prints the
// contradiction side by side, whatever the config asked for.
int demonstrate(const std::string& config_path, const global_opts& g) {
    experiment_config cfg = load_config(config_path);
    apply_overrides(cfg, g);
    cfg.mode = bounds_mode::prop1_forward;
    if (std::find(cfg.comparators.begin(), cfg.comparators.end(), "berinde27") ==
        cfg.comparators.end())
        cfg.comparators.push_back("berinde27");

    const experiment_result result = run_experiment(cfg);

    std::ostringstream os;
    os << emit(result, emit_format_from_string(g.format));
    if (g.format == "table") {
        const report_record* fwd = nullptr;
        const report_record* rev = nullptr;
        for (const auto& r : result.records) {
            if (r.bound_provenance == "prop1-forward") fwd = &r;
            if (r.bound_provenance == "prop1-reverse") rev = &r;
        }
        if (fwd && rev) {
            os << "\nboth bound pairs are valid, yet they certify opposite verdicts:\n"
               << "  forward bounds:  " << to_string(fwd->rel) << "\n"
               << "  reverse bounds:  " << to_string(rev->rel) << "\n";
        }
    }
    if (const int rc = write_output(os.str(), g); rc != 0) return rc;
    return result_exit_code(result);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point iteration convergence-rate comparison harness"};
    app.require_subcommand(1);

    global_opts g;
    app.add_option("--format", g.format, "output format: table, jsonl, csv")
        ->check(CLI::IsMember({"table", "jsonl", "json-lines", "csv", "csv-series"}));
    app.add_option("--out", g.out_path, "write output to a file instead of stdout");
    app.add_option("--horizon", g.horizon, "override the horizon on both sides");
    app.add_option("--window-frac", g.window_frac, "tail window fraction in (0,1]");
    app.add_option("--limit-tol", g.limit_tol, "limit tolerance for the ratio tests");
    app.add_option("--require-bounds-vanish", g.require_vanish,
                   "insist that bound tails drop below zero_tol (default true)");
    app.add_option("--corpus-dir", g.corpus_dir, "directory holding the built-in corpus");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run the experiment in a config file");
    run_cmd->add_option("config", config_path, "config file (JSON)")->required();

    auto* corpus_cmd = app.add_subcommand("corpus", "list or run the built-in corpus");
    auto* corpus_list_cmd = corpus_cmd->add_subcommand("list", "list corpus entries");
    std::string corpus_name;
    auto* corpus_run_cmd = corpus_cmd->add_subcommand("run", "run one corpus entry");
    corpus_run_cmd->add_option("name", corpus_name, "corpus entry name")->required();
    corpus_cmd->require_subcommand(1);

    std::string demo_path;
    auto* demo_cmd = app.add_subcommand(
        "demonstrate", "run a config with adversarial bounds in both directions");
    demo_cmd->add_option("config", demo_path, "config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return run_one(load_config(config_path), g);
        if (corpus_list_cmd->parsed()) return corpus_list(g);
        if (corpus_run_cmd->parsed()) return corpus_run(corpus_name, g);
        if (demo_cmd->parsed()) return demonstrate(demo_path, g);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
