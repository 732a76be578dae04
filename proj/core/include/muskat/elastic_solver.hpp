#pragma once

/**
 * @file elastic_solver.hpp
 * @brief Fluid flow through an elastic skeleton: Lame solve in the solid, interface
 * traction, fluid solve with a traction condition, and the coupled time step.
 */

#include <vector>

#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"
#include "muskat/saddle.hpp"
#include "muskat/transport.hpp"

namespace muskat {

struct ElasticParams {
    double lambda0{0.5};  // Lame coefficient of the skeleton
    double mu0{1e-2};     // fluid viscosity used when no per-cell viscosity is given
    double rho_s{2000.0};
    double gravity{1.0};
    SaddleOptions solver{};
    double cfl{0.5};
    int max_dt_retries{5};

    void validate() const;
};

/// Traction vector on one interface face (same order as interface_faces(mask)).
struct Traction {
    InterfaceFace face;
    double a1{0.0};
    double a2{0.0};
};

struct LameResult {
    FaceFields w_s;  // solid faces solved; other faces hold the Dirichlet data
    Field p_s;       // solid cells
    SaddleStats stats;
};

/**
 * Solves lambda0 Lap w = grad p - g rho_s e2 with div w = 0 on solid faces. Every
 * non-solid face takes its value from w_dirichlet (outer faces are forced to 0).
 * extra_force, when given, is added to the momentum source. Each solid component
 * keeps the mean pressure of p_init over it (zero without p_init).
 * Throws std::invalid_argument when w_dirichlet is NaN on an interface face.
 */
LameResult solve_lame(const Field& rho_s, const FaceFields& w_dirichlet, const CellMask& mask,
                      const ElasticParams& params, const Field* p_init = nullptr,
                      const FaceFields* extra_force = nullptr);

/**
 * A = lambda0 D(w_s) n - p n on each interface face, n pointing from solid into fluid.
 * Derivatives normal to the face are one-sided second order from the solid side;
 * p at the face is the mean of the two adjacent cells.
 */
std::vector<Traction> interface_traction(const FaceFields& w_s, const Field& p, const CellMask& mask,
                                         const ElasticParams& params);

struct FluidResult {
    FaceFields velocity;
    Field p;
    SaddleStats stats;
};

/**
 * Stokes solve mu Lap v - grad p + g rho e2 = 0 on fluid and interface faces with
 * no-slip on the outer boundary and the stress condition (mu0 D(v) - p I) n = A on
 * interface faces, imposed through ghost pressures and mirrored tangential ghosts.
 */
FluidResult solve_fluid_with_traction(const Field& rho, const std::vector<Traction>& traction, const CellMask& mask,
                                      const ElasticParams& params, const Field* mu = nullptr,
                                      const Field* p_init = nullptr);

struct CoupledDiagnostics {
    double dt{0.0};
    int dt_retries{0};
    double div_max{0.0};          // unified velocity, all cells
    double lame_div_max{0.0};     // Lame solution, solid cells
    double continuity{0.0};       // max |w_f - w_s| on interface faces
    double traction_residual{0.0};  // momentum residual on interface faces
    double lame_mismatch{0.0};    // max |w_s(Lame) - w_s(step)| on solid faces
    int outer_iters{0};
    long long inner_iters{0};
};

struct CoupledState {
    FaceFields w_f;       // fluid and interface faces
    FaceFields w_s;       // solid and interface faces
    FaceFields velocity;  // last unified velocity
    Field p;              // unified pressure, zero mean over all cells
    TransportState transport;  // mixture density over the whole domain
    std::vector<Traction> traction;
    CoupledDiagnostics diag;
};

CoupledState make_coupled_state(const CellMask& mask, TransportState transport);

/**
 * One time step. Step 1 solves the Lame problem with the fluid displacement trace,
 * step 2 extracts the interface traction, step 3 solves one implicit whole-domain
 * problem with coefficient mu in the fluid and lambda0*dt in the solid, then moves
 * the mixture density, and step 4 adds dt times the velocity to the displacements.
 * dt is reduced (and step 3 repeated) when the new velocity violates the CFL bound.
 */
CoupledState coupled_step(CoupledState state, double dt, const CellMask& mask, const ElasticParams& params);

}  // namespace muskat
