// Command-line front end: run, sweep, compare, validate.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 solver failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "muskat/config_io.hpp"
#include "muskat/metrics_io.hpp"
#include "muskat/output.hpp"
#include "muskat/snapshot_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct Globals {
    std::string out;
    bool quiet{false};
    int max_threads{1};
};

muskat::ScenarioConfig load(const std::string& path, const Globals& g) {
    muskat::ScenarioConfig cfg = muskat::load_config(path).config;
    if (!g.out.empty()) cfg.output_dir = g.out;
    return cfg;
}

std::vector<int> parse_n_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size() || n < 1) throw std::invalid_argument(item);
            out.push_back(n);
        } catch (const std::exception&) {
            throw muskat::ConfigError("--n: expected a comma-separated list of positive integers, got '" + s + "'");
        }
    }
    if (out.empty()) throw muskat::ConfigError("--n: empty list");
    return out;
}

void print_metrics(const muskat::RunMetrics& m) {
    std::printf("%12s %8s %12s %12s %12s %12s\n", "time", "step", "width", "height", "displ", "div_max");
    for (const auto& s : m.snapshots)
        std::printf("%12.6g %8lld %12.6g %12.6g %12.6g %12.3e\n", s.time, s.step, s.mixing_zone_width,
                    s.interface_mean_height, s.interface_displacement, s.div_max);
    std::printf("status=%s steps=%lld mass_drift=%.3e max_div=%.3e\n", m.summary.status.c_str(), m.summary.steps,
                m.summary.mass_drift, m.summary.max_div);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"muskat: two-phase flow in rigid and elastic periodic porous media"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--out", g.out, "Output directory (overrides output.directory)");
    app.add_flag("--quiet", g.quiet, "Suppress progress output");
    app.add_option("--max-threads", g.max_threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a single scenario");
    run->add_option("config", config_path, "Configuration file")->required();
    run->fallthrough();

    std::string n_list;
    auto* sweep = app.add_subcommand("sweep", "Run the scenario for several period counts n");
    sweep->add_option("config", config_path, "Configuration file")->required();
    sweep->add_option("--n", n_list, "Comma-separated period counts, e.g. 2,4,8")->required();
    sweep->fallthrough();

    std::string rigid_path;
    std::string elastic_path;
    auto* compare = app.add_subcommand("compare", "Compare rigid and elastic metrics files");
    compare->add_option("rigid", rigid_path, "metrics.jsonl of the rigid run")->required();
    compare->add_option("elastic", elastic_path, "metrics.jsonl of the elastic run")->required();
    compare->fallthrough();

    auto* validate = app.add_subcommand("validate", "Check a configuration and list applied defaults");
    validate->add_option("config", config_path, "Configuration file")->required();
    validate->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*validate) {
            const auto parsed = muskat::load_config(config_path);
            if (!g.quiet) {
                std::cout << "valid configuration\n";
                for (const auto& d : parsed.defaults_applied) std::cout << "default: " << d << "\n";
            }
            return kOk;
        }
        if (*run) {
            const auto cfg = load(config_path, g);
            const auto r = muskat::run_to_directory(cfg);
            if (!g.quiet) print_metrics(r.metrics);
            return kOk;
        }
        if (*sweep) {
            const auto cfg = load(config_path, g);
            const auto report = muskat::sweep_to_directory(cfg, parse_n_list(n_list), g.max_threads);
            bool all_ok = true;
            for (const auto& e : report.entries) {
                all_ok = all_ok && e.ok;
                if (!g.quiet) {
                    std::printf("n=%d %s\n", e.n, e.ok ? "ok" : ("failed: " + e.error).c_str());
                    if (!e.metrics.snapshots.empty()) print_metrics(e.metrics);
                }
            }
            return all_ok ? kOk : kSolverError;
        }
        if (*compare) {
            const auto rigid = muskat::read_metrics(rigid_path);
            const auto elastic = muskat::read_metrics(elastic_path);
            const auto rep = muskat::compare_modes(rigid, elastic);
            const std::string json = muskat::comparison_to_json(rep);
            if (!g.out.empty()) muskat::write_text_file(g.out, json);
            if (!g.quiet) std::cout << json;
            return kOk;
        }
    } catch (const muskat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const muskat::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolverError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}
