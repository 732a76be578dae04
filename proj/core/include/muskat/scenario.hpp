#pragma once

/**
 * @file scenario.hpp
 * @brief Scenario configuration, the time loop for both skeleton models, epsilon
 * sweeps and the rigid/elastic comparison.
 */

#include <functional>
#include <string>
#include <vector>

#include "muskat/errors.hpp"
#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"
#include "muskat/saddle.hpp"

namespace muskat {

enum class Mode { kRigid, kElastic };
enum class SnapshotFormat { kNone, kCsv, kVtk, kBoth };

struct ScenarioConfig {
    // geometry
    GeometryKind geometry{GeometryKind::kCapillaries};
    int n{4};
    double porosity{0.5};
    int cells_per_period{16};
    PorosityConvention porosity_convention{PorosityConvention::kFluidFraction};
    // physics
    Mode mode{Mode::kRigid};
    double rho_plus{998.2};
    double rho_minus{800.0};
    double rho_s{2000.0};
    double mu_plus{1e-2};
    double mu_minus{9e-1};
    double lambda0{0.5};
    double eps_coef{2e-5};
    double gravity{1e-12};  // scales solver time so the reference runs overturn within t ~ 5e3
    double interface_height{0.5};
    double interface_perturbation{0.0};
    int perturbation_wavenumber{1};
    // numerics
    double cfl{0.5};
    double dt_min{1e-12};
    double dt_max{50.0};
    SaddleOptions solver{};
    double mixing_threshold{0.05};
    // schedule
    double t_end{0.0};
    std::vector<double> snapshot_times;
    // output
    std::string output_dir{"out"};
    SnapshotFormat snapshot_format{SnapshotFormat::kCsv};

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
    [[nodiscard]] StaggeredGrid grid() const { return periodic_grid(n, cells_per_period); }
    /// Requested snapshot times, or {t_end} when none are listed.
    [[nodiscard]] std::vector<double> schedule() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct SnapshotMetrics {
    double time{0.0};
    long long step{0};
    double mixing_zone_width{0.0};
    double interface_mean_height{0.0};
    double interface_displacement{0.0};
    double volume_plus{0.0};
    double volume_minus{0.0};
    double volume_mixed{0.0};
    double total_mass{0.0};
    double rho_min{0.0};
    double rho_max{0.0};
    double div_max{0.0};       // largest post-solve divergence since the previous snapshot
    long long outer_iters{0};  // pressure sweeps since the previous snapshot
    long long inner_iters{0};

    friend bool operator==(const SnapshotMetrics&, const SnapshotMetrics&) = default;
};

struct RunSummary {
    std::string mode;
    std::string status{"ok"};
    std::string message;
    long long steps{0};
    double delta{1.0};
    double initial_mass{0.0};
    double final_mass{0.0};
    double mass_drift{0.0};  // relative
    double max_div{0.0};
    double max_traction_residual{0.0};
    double max_continuity{0.0};

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunMetrics {
    std::vector<SnapshotMetrics> snapshots;
    RunSummary summary;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Fields of one snapshot.
struct Snapshot {
    double time{0.0};
    Field rho;
    Field p;
    FaceFields velocity;
};

struct ScenarioResult {
    std::vector<Snapshot> snapshots;
    RunMetrics metrics;
};

/// Solver failure during a run; carries the metrics gathered up to the failure.
class ScenarioError : public SolverError {
public:
    ScenarioError(const SolverError& cause, RunMetrics partial)
        : SolverError(cause.message(), cause.residual()), metrics_(std::move(partial)) {}
    [[nodiscard]] const RunMetrics& metrics() const { return metrics_; }

private:
    RunMetrics metrics_;
};

/// Called once per snapshot as soon as it is recorded.
using SnapshotSink = std::function<void(const Snapshot&, const SnapshotMetrics&)>;

/// Deterministic run; throws ScenarioError on solver failure.
ScenarioResult run_scenario(const ScenarioConfig& config, const SnapshotSink& sink = {});

struct SweepEntry {
    int n{0};
    bool ok{false};
    std::string error;
    RunMetrics metrics;
};

struct SweepReport {
    std::vector<SweepEntry> entries;  // in the order of n_list
};

using ScenarioRunner = std::function<ScenarioResult(const ScenarioConfig&)>;

/// One run per n, executed on up to max_threads workers. runner defaults to
/// run_scenario; a failing run is recorded and the sweep continues.
SweepReport epsilon_sweep(const ScenarioConfig& base, const std::vector<int>& n_list, int max_threads = 1,
                          const ScenarioRunner& runner = {});

struct ComparisonRow {
    double time{0.0};
    double rigid_width{0.0};
    double elastic_width{0.0};
    double rigid_displacement{0.0};
    double elastic_displacement{0.0};
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool rigid_wider{false};            // rigid width at t_end exceeds elastic width
    bool elastic_displaced_less{false};  // elastic displacement at t_end below rigid
};

/// Throws std::invalid_argument when the snapshot times differ.
ComparisonReport compare_modes(const RunMetrics& rigid, const RunMetrics& elastic);

const char* to_string(Mode m);

}  // namespace muskat
