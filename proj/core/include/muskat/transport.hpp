#pragma once

/**
 * @file transport.hpp
 * @brief Donor-cell (first-order upwind) conservative transport of density,
 * viscosity and the phase indicator.
 */

#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"

namespace muskat {

/// Cells over which bounds and mass are measured.
enum class TransportScope { kFluidCells, kAllCells };

struct TransportState {
    Field rho;
    Field mu;
    Field phase;  // 1 in the upper ("+") fluid, 0 in the lower fluid
    double t{0.0};
    double dt{0.0};
    double cfl{0.5};
    TransportScope scope{TransportScope::kFluidCells};
    double rho_lo{0.0};  // bounds of the initial data over the scope
    double rho_hi{0.0};
    double bound_slack{0.0};  // accumulated allowance for round-off and residual divergence
};

struct InitialData {
    double rho_plus{998.2};
    double rho_minus{800.0};
    double rho_s{2000.0};
    double mu_plus{1e-2};
    double mu_minus{9e-1};
    double interface_height{0.5};
    double perturbation{0.0};  // amplitude of cos(2 pi k x1) added to the interface line
    int wavenumber{1};
    bool include_solid{false};  // true: solid cells carry rho_s and take part in transport
};

/**
 * Fluid cells whose center lies above the interface line (x2 smaller, gravity
 * points to +x2) get the "+" fluid. Solid cells get rho_s when include_solid is
 * set, otherwise 0 and are left out of the scope.
 */
TransportState init_density(const CellMask& mask, const InitialData& data);

/// Largest dt with dt*(max|u|/h1 + max|v|/h2) <= cfl, clamped to [dt_min, dt_max].
/// An identically zero velocity returns dt_max.
double choose_dt(const FaceFields& v, const StaggeredGrid& grid, double cfl, double dt_min, double dt_max);

/// Courant rate max|u|/h1 + max|v|/h2.
double courant_rate(const FaceFields& v, const StaggeredGrid& grid);

/**
 * One donor-cell step of length state.dt applied to rho, mu and phase; advances t.
 * Throws CflError when dt exceeds the CFL bound, std::invalid_argument when the
 * normal velocity on the outer boundary is nonzero, and SolverError when the new
 * density leaves the initial bounds by more than bound_slack. Each step adds
 * round-off plus dt*max|div v|*max|rho| to bound_slack.
 */
TransportState upwind_step(TransportState state, const FaceFields& v, const CellMask& mask);

/// Donor-cell update of a single center field.
Field upwind_update(const Field& q, const FaceFields& v, double dt);

/// Sum of q * h1 * h2 over the scope.
double total_mass(const Field& q, const CellMask& mask, TransportScope scope);

}  // namespace muskat
