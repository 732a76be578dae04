#pragma once

/**
 * @file output.hpp
 * @brief Runs a scenario and writes its snapshots and metrics into a directory.
 *
 * Layout: <dir>/snapshot_<k>.csv and/or .vtk for k = 0, 1, ... in schedule order,
 * <dir>/metrics.jsonl, <dir>/config.ini (the effective configuration).
 */

#include <string>

#include "muskat/scenario.hpp"

namespace muskat {

/// Snapshot file stem for index k.
std::string snapshot_stem(std::size_t k);

/// Runs config and writes into config.output_dir (created if needed). On solver
/// failure the partial metrics are written before the ScenarioError propagates.
ScenarioResult run_to_directory(const ScenarioConfig& config);

/// Sweep with one subdirectory n_<n> per run under base.output_dir, plus sweep.jsonl.
SweepReport sweep_to_directory(const ScenarioConfig& base, const std::vector<int>& n_list, int max_threads);

}  // namespace muskat
