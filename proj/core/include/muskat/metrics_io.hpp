#pragma once

/**
 * @file metrics_io.hpp
 * @brief Run metrics as JSON lines: one object per snapshot ("type": "snapshot")
 * followed by one run summary ("type": "summary").
 *
 * Snapshot keys: time, step, mixing_zone_width, interface_mean_height,
 * interface_displacement, volume_plus, volume_minus, volume_mixed, total_mass,
 * rho_min, rho_max, div_max, outer_iters, inner_iters.
 * Summary keys: mode, status, message, steps, delta, initial_mass, final_mass,
 * mass_drift, max_div, max_traction_residual, max_continuity, and the verdicts
 * div_ok (max_div within div_tol) and mass_ok (drift below 1e-8).
 */

#include <string>

#include "muskat/scenario.hpp"

namespace muskat {

std::string metrics_to_jsonl(const RunMetrics& m, double div_tol);
RunMetrics metrics_from_jsonl(const std::string& text);

void write_metrics(const RunMetrics& m, const std::string& path, double div_tol);
RunMetrics read_metrics(const std::string& path);

/// Comparison table and verdicts as a single JSON document.
std::string comparison_to_json(const ComparisonReport& r);

/// Sweep report: one line per n with status and the final snapshot metrics.
std::string sweep_to_jsonl(const SweepReport& r);

}  // namespace muskat
