#pragma once

/**
 * @file rigid_solver.hpp
 * @brief Stationary Stokes solve in the pore space of a rigid skeleton:
 * intermediate velocity, pressure-velocity iteration, final velocity.
 */

#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"
#include "muskat/saddle.hpp"

namespace muskat {

struct StokesParams {
    double mu1{1e-2};     // viscosity coefficient used when no per-cell viscosity is given
    double eps{2e-5};     // pore-size factor in the viscous coefficient mu * eps^2
    double gravity{1.0};  // body force per unit density along +x2
    SaddleOptions solver{};

    void validate() const;
};

struct StokesDiagnostics {
    double div_max{0.0};
    int outer_iters{0};
    long long inner_iters{0};
    double c_p_final{0.0};
};

struct StokesResult {
    FaceFields v;
    Field p;
    StokesDiagnostics diag;
};

/// Saddle problem for the pore space: fluid faces unknown, no-slip on walls,
/// coefficient mu * eps^2 per fluid cell. mu may be null (uniform mu1).
SaddleProblem rigid_problem(const Field& rho, const Field* mu, const CellMask& mask, const StokesParams& params);

/// Vector Laplace solve mu eps^2 Lap v = -g rho e2 with no pressure.
FaceFields intermediate_velocity(const Field& rho, const CellMask& mask, const StokesParams& params,
                                 const Field* mu = nullptr);

/// Pressure-velocity iteration from p_init. v_tilde is the intermediate velocity of
/// the same rho; when it is already solenoidal and p_init is zero it is returned as is.
StokesResult pressure_velocity_iteration(const FaceFields& v_tilde, const Field& rho, const CellMask& mask,
                                         const StokesParams& params, const Field* p_init, const Field* mu = nullptr);

/// Composition of the two steps above on one assembled system.
StokesResult stationary_stokes_solve(const Field& rho, const CellMask& mask, const StokesParams& params,
                                     const Field* p_init, const Field* mu = nullptr);

/// Max |div v| over fluid cells.
double fluid_divergence_max(const FaceFields& v, const CellMask& mask);

}  // namespace muskat
