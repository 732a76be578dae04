#pragma once

/**
 * @file grid_ops.hpp
 * @brief Discrete divergence, gradient, vector Laplacian and wall ghost filling
 * on the staggered grid.
 */

#include "muskat/geometry.hpp"
#include "muskat/grid.hpp"

namespace muskat {

/// (u(i+1,j) - u(i,j))/h1 + (v(i,j+1) - v(i,j))/h2 on every cell.
Field divergence(const Field& u, const Field& v);
inline Field divergence(const FaceFields& f) { return divergence(f.u, f.v); }

/// Face-normal differences of a center field on interior faces; outer faces are 0.
FaceFields gradient(const Field& p);

enum class LaplacianTarget { kFluidFaces, kSolidFaces };

/// 5-point Laplacian of each component at faces of the target class, zero elsewhere.
/// Neighbour values are read as stored, so walls must be imposed first with apply_bc.
FaceFields masked_vector_laplacian(const FaceFields& f, const CellMask& mask,
                                   LaplacianTarget target = LaplacianTarget::kFluidFaces);

/// Conservative variable-coefficient form div(eta grad f) per component. eta is a
/// center field; at cell corners the mean over in-domain adjacent cells with eta > 0
/// is used.
FaceFields masked_vector_laplacian(const FaceFields& f, const CellMask& mask, const Field& eta,
                                   LaplacianTarget target = LaplacianTarget::kFluidFaces);

/// Viscosity at corner (i, j), located at (i*h1, j*h2).
double corner_coefficient(const Field& eta, int i, int j);

enum class WallCondition { kNoSlip, kImpermeabilitySlip };

/**
 * Normal components on outer and interface faces are set to zero. Tangential values
 * across a wall (solid faces next to fluid faces, and the off-domain ghost rows) are
 * set to minus the fluid value for no-slip or to the fluid value for slip.
 */
FaceFields apply_bc(FaceFields f, const CellMask& mask, WallCondition kind);

}  // namespace muskat
