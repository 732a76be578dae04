#include "muskat/transport.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "muskat/errors.hpp"
#include "muskat/grid_ops.hpp"

namespace muskat {
namespace {

// Discretely solenoidal field from a stream function on cell corners; psi vanishes
// on the boundary so the outer normal velocity is zero.
FaceFields stream_velocity(const CellMask& mask, double amp) {
    const auto& g = mask.grid;
    auto psi = [&](int i, int j) {
        if (i == 0 || i == g.nx || j == 0 || j == g.ny) return 0.0;
        const double x = i * g.h1;
        const double y = j * g.h2;
        return amp * std::sin(M_PI * x) * std::sin(M_PI * x) * std::sin(2 * M_PI * y) * std::sin(M_PI * y);
    };
    FaceFields v(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) v.u(i, j) = (psi(i, j + 1) - psi(i, j)) / g.h2;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v.v(i, j) = -(psi(i + 1, j) - psi(i, j)) / g.h1;
    return v;
}

TEST(ChooseDt, Examples) {
    const auto g = StaggeredGrid::unit_square(10, 10);
    FaceFields v(g);
    EXPECT_EQ(choose_dt(v, g, 0.5, 1e-9, 7.0), 7.0);
    v.u(3, 3) = 1.0;
    EXPECT_NEAR(choose_dt(v, g, 0.5, 1e-9, 7.0), 0.05, 1e-15);
    v.u(3, 3) = -2.0;
    v.v(4, 4) = 2.0;
    EXPECT_NEAR(choose_dt(v, g, 0.8, 1e-9, 7.0), 0.02, 1e-15);
    EXPECT_EQ(choose_dt(v, g, 0.8, 0.5, 7.0), 0.5);
    EXPECT_NEAR(courant_rate(v, g), 40.0, 1e-12);
}

TEST(InitDensity, EqualDensitiesUniform) {
    const auto mask = build_mask(GeometryKind::kCapillaries, 2, 0.5, periodic_grid(2, 8));
    InitialData d;
    d.rho_plus = d.rho_minus = 900.0;
    const auto s = init_density(mask, d);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i) EXPECT_EQ(s.rho(i, j), mask.fluid(i, j) ? 900.0 : 0.0);
}

TEST(InitDensity, HalfSplitOnEvenGrid) {
    const auto mask = build_mask(GeometryKind::kAllFluid, 1, 0.5, StaggeredGrid::unit_square(16, 16));
    InitialData d;
    const auto s = init_density(mask, d);
    int plus = 0;
    int minus = 0;
    for (double r : s.rho.interior_values()) {
        plus += r == d.rho_plus;
        minus += r == d.rho_minus;
    }
    EXPECT_EQ(plus, 128);
    EXPECT_EQ(minus, 128);
    // Heavy fluid on top (small x2), phase marks it.
    EXPECT_EQ(s.rho(0, 0), d.rho_plus);
    EXPECT_EQ(s.phase(0, 0), 1.0);
    EXPECT_EQ(s.phase(0, 15), 0.0);
    EXPECT_EQ(s.mu(0, 0), d.mu_plus);
    EXPECT_EQ(s.mu(0, 15), d.mu_minus);
}

TEST(InitDensity, SolidCellsByMode) {
    const auto mask = build_mask(GeometryKind::kDisjointSquares, 4, 0.5, periodic_grid(4, 8));
    InitialData d;
    const auto rigid = init_density(mask, d);
    d.include_solid = true;
    const auto elastic = init_density(mask, d);
    double mass = 0.0;
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            if (mask.fluid(i, j)) continue;
            EXPECT_EQ(rigid.rho(i, j), 0.0);
            EXPECT_EQ(elastic.rho(i, j), d.rho_s);
        }
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) mass += elastic.rho(i, j) / (32.0 * 32.0);
    EXPECT_EQ(rigid.scope, TransportScope::kFluidCells);
    EXPECT_EQ(elastic.scope, TransportScope::kAllCells);
    EXPECT_DOUBLE_EQ(total_mass(elastic.rho, mask, TransportScope::kAllCells), mass);
    EXPECT_EQ(total_mass(elastic.rho, mask, TransportScope::kAllCells),
              total_mass(init_density(mask, d).rho, mask, TransportScope::kAllCells));
}

TEST(InitDensity, PerturbationMovesTheLine) {
    const auto mask = build_mask(GeometryKind::kAllFluid, 1, 0.5, StaggeredGrid::unit_square(16, 16));
    InitialData d;
    d.perturbation = 0.125;
    d.wavenumber = 1;
    const auto s = init_density(mask, d);
    // cos > 0 near x1 = 0: the line sits lower, so more "+" cells in the first column.
    int first = 0;
    int middle = 0;
    for (int j = 0; j < 16; ++j) {
        first += s.phase(0, j) == 1.0;
        middle += s.phase(8, j) == 1.0;
    }
    EXPECT_GT(first, 8);
    EXPECT_LT(middle, 8);
}

class UpwindTest : public ::testing::Test {
protected:
    CellMask mask = build_mask(GeometryKind::kAllFluid, 1, 0.5, StaggeredGrid::unit_square(16, 16));
    TransportState state = init_density(mask, InitialData{});
};

TEST_F(UpwindTest, ZeroVelocityUnchanged) {
    state.dt = 1.0;
    const auto out = upwind_step(state, FaceFields(mask.grid), mask);
    EXPECT_EQ(out.rho, state.rho);
    EXPECT_EQ(out.mu, state.mu);
    EXPECT_EQ(out.t, 1.0);
}

TEST_F(UpwindTest, UniformPreservedBySolenoidalField) {
    state.rho.fill(900.0);
    state.rho_lo = state.rho_hi = 900.0;
    const auto v = stream_velocity(mask, 1.0);
    ASSERT_LT(divergence(v).max_abs_interior(), 1e-11);
    state.dt = choose_dt(v, mask.grid, state.cfl, 0.0, 1.0);
    const auto out = upwind_step(state, v, mask);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i) EXPECT_NEAR(out.rho(i, j), 900.0, 1e-10);
}

TEST_F(UpwindTest, RejectsCflViolation) {
    const auto v = stream_velocity(mask, 1.0);
    state.dt = 2.0 * choose_dt(v, mask.grid, state.cfl, 0.0, 1e9);
    try {
        (void)upwind_step(state, v, mask);
        FAIL() << "expected CflError";
    } catch (const CflError& e) {
        EXPECT_NEAR(e.required_dt(), state.dt / 2.0, 1e-12 * state.dt);
    }
}

TEST_F(UpwindTest, RejectsOuterNormalVelocity) {
    FaceFields v(mask.grid);
    v.u(0, 3) = 1e-3;
    state.dt = 1.0;
    EXPECT_THROW((void)upwind_step(state, v, mask), std::invalid_argument);
}

TEST_F(UpwindTest, DetectsMaximumPrincipleViolation) {
    // Bounds recorded below the data: any step must report the excess.
    state.rho_hi = 900.0;
    state.dt = 1.0;
    FaceFields v(mask.grid);
    v.u(5, 2) = 1e-3;
    try {
        (void)upwind_step(state, v, mask);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_NEAR(e.residual(), 98.2, 1e-6);
    }
}

TEST_F(UpwindTest, ConvergentFieldStaysWithinDivergenceAllowance) {
    FaceFields v(mask.grid);
    v.u(5, 2) = 1e-2;
    v.u(6, 2) = -1e-2;
    state.dt = 1.0;
    const auto out = upwind_step(state, v, mask);
    EXPECT_GT(out.rho(5, 2), state.rho_hi);
    EXPECT_LE(out.rho(5, 2) - state.rho_hi, out.bound_slack);
}

TEST(Upwind, CourantOneShiftsExactlyOneCell) {
    const int n = 64;
    const auto g = StaggeredGrid::unit_square(n, 1);
    Field rho(g, Staggering::kCenter, 800.0);
    for (int i = 0; i < 20; ++i) rho(i, 0) = 998.2;
    FaceFields v(g);
    for (int i = 1; i < n; ++i) v.u(i, 0) = 1.0;
    const double dt = g.h1;
    Field cur = rho;
    for (int step = 1; step <= 10; ++step) {
        const Field next = upwind_update(cur, v, dt);
        for (int i = 1; i < n - 1; ++i) EXPECT_EQ(next(i, 0), cur(i - 1, 0)) << "step " << step << " i " << i;
        cur = next;
    }
}

TEST(Upwind, MassConservedOverLongRun) {
    const auto mask = build_mask(GeometryKind::kAllFluid, 1, 0.5, StaggeredGrid::unit_square(16, 16));
    InitialData d;
    d.perturbation = 0.1;
    auto state = init_density(mask, d);
    const auto v = stream_velocity(mask, 1e-3);
    state.dt = choose_dt(v, mask.grid, 0.5, 0.0, 1e9);
    const double m0 = total_mass(state.rho, mask, state.scope);
    for (int k = 0; k < 10000; ++k) state = upwind_step(std::move(state), v, mask);
    const double m1 = total_mass(state.rho, mask, state.scope);
    EXPECT_LE(std::abs(m1 - m0) / m0, 1e-8);
    EXPECT_GE(state.rho_lo, 800.0 - 1e-9);
}

}  // namespace
}  // namespace muskat
