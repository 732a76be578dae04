#pragma once

/**
 * @file diagnostics.hpp
 * @brief Mixing-zone width, interface height and phase-volume measurements.
 */

#include <vector>

#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"

namespace muskat {

/// Row average of rho over fluid cells, one value per row j (NaN for rows without fluid).
std::vector<double> row_average(const Field& rho, const CellMask& mask);

/**
 * Total height of rows whose fluid-averaged density lies strictly between
 * rho_minus + theta*d and rho_plus - theta*d, d = rho_plus - rho_minus.
 * Returns 0 when rho_plus == rho_minus. Requires 0 < theta < 0.5.
 */
double mixing_zone_width(const Field& rho, const CellMask& mask, double rho_plus, double rho_minus, double theta = 0.05);

/// Same measurement applied to an already averaged profile (one value per row of height h2).
double mixing_zone_width_profile(const std::vector<double>& profile, double h2, double rho_plus, double rho_minus,
                                 double theta = 0.05);

/// Mean depth of the "+" fluid column: twice the x2-centroid of the phase
/// indicator over fluid cells. Equals the interface height for a flat interface.
double interface_mean_height(const Field& phase, const CellMask& mask);

struct PhaseVolumes {
    double plus{0.0};    // fluid cells at rho_plus within tol
    double minus{0.0};   // fluid cells at rho_minus within tol
    double mixed{0.0};   // remaining fluid cells
};

PhaseVolumes phase_volumes(const Field& rho, const CellMask& mask, double rho_plus, double rho_minus,
                           double rel_tol = 1e-9);

/// Extrema of rho over fluid cells.
std::pair<double, double> fluid_extrema(const Field& rho, const CellMask& mask);

}  // namespace muskat
