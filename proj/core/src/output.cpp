#include "muskat/output.hpp"

#include <cstdio>
#include <filesystem>

#include "muskat/config_io.hpp"
#include "muskat/metrics_io.hpp"
#include "muskat/snapshot_io.hpp"

namespace muskat {

namespace fs = std::filesystem;

std::string snapshot_stem(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%03zu", k);
    return buf;
}

ScenarioResult run_to_directory(const ScenarioConfig& config) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    write_text_file((dir / "config.ini").string(), serialize_config(config));
    std::size_t k = 0;
    const auto fmt = config.snapshot_format;
    SnapshotSink sink = [&](const Snapshot& s, const SnapshotMetrics&) {
        const std::string stem = (dir / snapshot_stem(k++)).string();
        if (fmt == SnapshotFormat::kCsv || fmt == SnapshotFormat::kBoth)
            write_snapshot(s, stem + ".csv", SnapshotFileFormat::kCsv);
        if (fmt == SnapshotFormat::kVtk || fmt == SnapshotFormat::kBoth)
            write_snapshot(s, stem + ".vtk", SnapshotFileFormat::kVtkLegacy);
    };
    const std::string metrics_path = (dir / "metrics.jsonl").string();
    try {
        ScenarioResult r = run_scenario(config, sink);
        write_metrics(r.metrics, metrics_path, config.solver.div_tol);
        return r;
    } catch (const ScenarioError& e) {
        write_metrics(e.metrics(), metrics_path, config.solver.div_tol);
        throw;
    }
}

SweepReport sweep_to_directory(const ScenarioConfig& base, const std::vector<int>& n_list, int max_threads) {
    const fs::path root(base.output_dir);
    fs::create_directories(root);
    // Each run writes only below its own subdirectory.
    const SweepReport report = epsilon_sweep(base, n_list, max_threads, [&root](const ScenarioConfig& c) {
        ScenarioConfig own = c;
        own.output_dir = (root / ("n_" + std::to_string(c.n))).string();
        return run_to_directory(own);
    });
    write_text_file((root / "sweep.jsonl").string(), sweep_to_jsonl(report));
    return report;
}

}  // namespace muskat
