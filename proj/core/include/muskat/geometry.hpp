#pragma once

/**
 * @file geometry.hpp
 * @brief Periodic pore-space masks and face classification.
 */

#include <cstdint>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

enum class GeometryKind { kCapillaries, kDisjointSquares, kAllFluid };

/// Which phase the porosity m measures for the squares geometry.
enum class PorosityConvention { kFluidFraction, kSolidFraction };

enum class FaceClass : std::uint8_t { kFluid, kSolid, kInterface, kOuter };

struct CellMask {
    StaggeredGrid grid;
    std::vector<std::uint8_t> chi;         // per cell, 1 = fluid, row-major
    std::vector<FaceClass> u_class;        // (nx+1) x ny
    std::vector<FaceClass> v_class;        // nx x (ny+1)
    bool faces_classified{false};

    [[nodiscard]] bool fluid(int i, int j) const { return chi[static_cast<std::size_t>(i + j * grid.nx)] != 0; }
    /// Out-of-domain cells count as not fluid.
    [[nodiscard]] bool fluid_or_false(int i, int j) const {
        return i >= 0 && i < grid.nx && j >= 0 && j < grid.ny && fluid(i, j);
    }
    [[nodiscard]] FaceClass u_face(int i, int j) const { return u_class[static_cast<std::size_t>(i + j * (grid.nx + 1))]; }
    [[nodiscard]] FaceClass v_face(int i, int j) const { return v_class[static_cast<std::size_t>(i + j * grid.nx)]; }

    [[nodiscard]] int fluid_cell_count() const;
    [[nodiscard]] double fluid_fraction() const;
    [[nodiscard]] int count_u(FaceClass c) const;
    [[nodiscard]] int count_v(FaceClass c) const;
};

/// Grid with nx = ny = n * cells_per_period on the unit square.
StaggeredGrid periodic_grid(int n, int cells_per_period);

/**
 * Cell-center membership mask. Capillaries: fluid strip [eps*k, eps*k + eps*m)
 * in each period. Squares: centered solid square of side eps*sqrt(1 - m) (fluid
 * fraction convention) or eps*sqrt(m) (solid fraction convention).
 * Throws std::invalid_argument when a period has fewer than 4 cells or a block
 * is thinner than 2 cells.
 */
CellMask build_mask(GeometryKind kind, int n, double m, const StaggeredGrid& grid,
                    PorosityConvention convention = PorosityConvention::kFluidFraction);

/// Fill face classes: outer on the domain perimeter, interface between a fluid
/// and a solid cell, otherwise fluid or solid.
CellMask classify_faces(CellMask mask);

/// An interface face with its axis-aligned unit normal pointing from solid into fluid.
struct InterfaceFace {
    bool is_u{true};
    int i{0};
    int j{0};
    int n1{0};
    int n2{0};
};

std::vector<InterfaceFace> interface_faces(const CellMask& mask);

const char* to_string(GeometryKind kind);
const char* to_string(FaceClass c);

}  // namespace muskat
