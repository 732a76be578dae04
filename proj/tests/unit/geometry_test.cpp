#include "muskat/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace muskat {
namespace {

TEST(PeriodicGrid, CellsPerPeriodTimesN) {
    const auto g = periodic_grid(4, 16);
    EXPECT_EQ(g.nx, 64);
    EXPECT_EQ(g.ny, 64);
}

TEST(BuildMask, AllFluidHasNoInterface) {
    const auto g = StaggeredGrid::unit_square(16, 16);
    const auto m = build_mask(GeometryKind::kAllFluid, 1, 0.5, g);
    EXPECT_EQ(m.fluid_cell_count(), 256);
    EXPECT_TRUE(interface_faces(m).empty());
    EXPECT_EQ(m.count_u(FaceClass::kInterface) + m.count_v(FaceClass::kInterface), 0);
    // Interior faces fluid, perimeter faces outer.
    EXPECT_EQ(m.count_u(FaceClass::kOuter), 2 * 16);
    EXPECT_EQ(m.count_v(FaceClass::kOuter), 2 * 16);
    EXPECT_EQ(m.count_u(FaceClass::kFluid), 15 * 16);
    EXPECT_EQ(m.count_v(FaceClass::kFluid), 16 * 15);
}

TEST(BuildMask, CapillariesTwoStripsOfQuarterWidth) {
    const auto g = StaggeredGrid::unit_square(32, 32);
    const auto m = build_mask(GeometryKind::kCapillaries, 2, 0.5, g);
    EXPECT_DOUBLE_EQ(m.fluid_fraction(), 0.5);
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            const double x = g.x1_center(i);
            const bool expect = (x < 0.25) || (x >= 0.5 && x < 0.75);
            EXPECT_EQ(m.fluid(i, j), expect) << i << "," << j;
        }
}

TEST(BuildMask, CapillaryInterfaceCount) {
    // Fluid/solid lines at x1 = 0.25, 0.5, 0.75; the wall at x1 = 0 bounds the
    // first strip as an outer face.
    const auto g = StaggeredGrid::unit_square(32, 32);
    const auto m = build_mask(GeometryKind::kCapillaries, 2, 0.5, g);
    EXPECT_EQ(m.count_u(FaceClass::kInterface), 3 * 32);
    EXPECT_EQ(m.count_v(FaceClass::kInterface), 0);
    int fluid_boundary = m.count_u(FaceClass::kInterface);
    for (int j = 0; j < 32; ++j)
        if (m.fluid(0, j)) ++fluid_boundary;
    EXPECT_EQ(fluid_boundary, 4 * 32);
}

TEST(BuildMask, DisjointSquareSideFromPorosity) {
    const auto g = StaggeredGrid::unit_square(32, 32);
    const auto m = build_mask(GeometryKind::kDisjointSquares, 1, 0.75, g);
    EXPECT_DOUBLE_EQ(m.fluid_fraction(), 0.75);
    int imin = 32, imax = -1, jmin = 32, jmax = -1;
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i)
            if (!m.fluid(i, j)) {
                imin = std::min(imin, i);
                imax = std::max(imax, i);
                jmin = std::min(jmin, j);
                jmax = std::max(jmax, j);
            }
    EXPECT_EQ(imin, 8);
    EXPECT_EQ(imax, 23);
    EXPECT_EQ(jmin, 8);
    EXPECT_EQ(jmax, 23);
}

TEST(BuildMask, SolidFractionConventionSwapsRoles) {
    const auto g = StaggeredGrid::unit_square(32, 32);
    const auto solid = build_mask(GeometryKind::kDisjointSquares, 1, 0.25, g, PorosityConvention::kSolidFraction);
    EXPECT_DOUBLE_EQ(solid.fluid_fraction(), 0.75);
    for (double m : {0.3, 0.5, 0.8}) {
        const auto a = build_mask(GeometryKind::kDisjointSquares, 1, m, g, PorosityConvention::kFluidFraction);
        const auto b = build_mask(GeometryKind::kDisjointSquares, 1, 1.0 - m, g, PorosityConvention::kSolidFraction);
        EXPECT_EQ(a.chi, b.chi) << m;
    }
}

TEST(BuildMask, RejectsCoarseResolutionAndBadPorosity) {
    EXPECT_THROW(build_mask(GeometryKind::kCapillaries, 4, 0.5, StaggeredGrid::unit_square(12, 12)),
                 std::invalid_argument);
    EXPECT_THROW(build_mask(GeometryKind::kCapillaries, 2, 0.5, StaggeredGrid::unit_square(33, 32)),
                 std::invalid_argument);
    EXPECT_THROW(build_mask(GeometryKind::kCapillaries, 2, 0.01, StaggeredGrid::unit_square(32, 32)),
                 std::invalid_argument);
    EXPECT_THROW(build_mask(GeometryKind::kCapillaries, 2, 1.0, StaggeredGrid::unit_square(32, 32)),
                 std::invalid_argument);
    EXPECT_THROW(build_mask(GeometryKind::kCapillaries, 0, 0.5, StaggeredGrid::unit_square(32, 32)),
                 std::invalid_argument);
}

TEST(BuildMask, PeriodicUnderShiftByOnePeriod) {
    for (auto kind : {GeometryKind::kCapillaries, GeometryKind::kDisjointSquares}) {
        const int cpp = 12;
        const auto g = periodic_grid(3, cpp);
        const auto m = build_mask(kind, 3, 0.6, g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i + cpp < g.nx; ++i) EXPECT_EQ(m.fluid(i, j), m.fluid(i + cpp, j));
        if (kind == GeometryKind::kDisjointSquares)
            for (int j = 0; j + cpp < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) EXPECT_EQ(m.fluid(i, j), m.fluid(i, j + cpp));
    }
}

TEST(BuildMask, PorosityErrorDecaysUnderRefinement) {
    const double m = 0.6;
    double prev = 1.0;
    for (int cpp : {8, 32, 128}) {
        const auto mask = build_mask(GeometryKind::kDisjointSquares, 1, m, periodic_grid(1, cpp));
        const double err = std::abs(mask.fluid_fraction() - m);
        EXPECT_LE(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(ClassifyFaces, SingleSolidCellHasFourInterfaceFaces) {
    auto m = build_mask(GeometryKind::kAllFluid, 1, 0.5, StaggeredGrid::unit_square(8, 8));
    m.chi[static_cast<std::size_t>(3 + 4 * 8)] = 0;
    m = classify_faces(std::move(m));
    const auto faces = interface_faces(m);
    ASSERT_EQ(faces.size(), 4u);
    // Normals point from solid into fluid.
    for (const auto& f : faces) {
        if (f.is_u) {
            EXPECT_EQ(f.j, 4);
            EXPECT_EQ(f.n1, f.i == 3 ? -1 : 1);
        } else {
            EXPECT_EQ(f.i, 3);
            EXPECT_EQ(f.n2, f.j == 4 ? -1 : 1);
        }
    }
}

TEST(ClassifyFaces, Deterministic) {
    const auto g = periodic_grid(2, 16);
    const auto a = build_mask(GeometryKind::kDisjointSquares, 2, 0.5, g);
    const auto b = classify_faces(a);
    EXPECT_EQ(a.u_class, b.u_class);
    EXPECT_EQ(a.v_class, b.v_class);
}

}  // namespace
}  // namespace muskat
