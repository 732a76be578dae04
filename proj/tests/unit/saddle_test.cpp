#include "muskat/saddle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "muskat/errors.hpp"
#include "muskat/geometry.hpp"
#include "muskat/grid_ops.hpp"
#include "test_util.hpp"

namespace muskat {
namespace {

// Unit-coefficient problem on the whole square: interior faces unknown, walls fixed at 0.
SaddleProblem box_problem(int n) {
    SaddleProblem pb(StaggeredGrid::unit_square(n, n));
    const auto& g = pb.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) pb.u_at(i, j) = FaceRole::kUnknown;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) pb.v_at(i, j) = FaceRole::kUnknown;
    for (auto& c : pb.cell_role) c = CellRole::kUnknown;
    pb.eta.fill(1.0);
    return pb;
}

double mean(const Field& p) {
    double s = 0.0;
    for (double x : p.interior_values()) s += x;
    return s / static_cast<double>(p.ni() * p.nj());
}

TEST(Saddle, ZeroForceGivesZero) {
    const auto r = solve_saddle(box_problem(8), SaddleOptions{});
    EXPECT_EQ(r.u.max_abs(), 0.0);
    EXPECT_EQ(r.p.max_abs_interior(), 0.0);
}

TEST(Saddle, GradientForceIsBalancedByPressure) {
    SaddleProblem pb = box_problem(12);
    Field pstar(pb.grid, Staggering::kCenter);
    test::fill_fn(pstar, [](double x, double y) { return std::cos(3 * x) * y + x * x; });
    pb.force = gradient(pstar);
    const auto r = solve_saddle(pb, SaddleOptions{});
    EXPECT_LT(r.u.max_abs(), 1e-10);
    const double shift = mean(pstar);
    for (int j = 0; j < 12; ++j)
        for (int i = 0; i < 12; ++i) EXPECT_NEAR(r.p(i, j), pstar(i, j) - shift, 1e-8);
    EXPECT_NEAR(mean(r.p), 0.0, 1e-12);
}

SaddleProblem swirl_problem() {
    SaddleProblem pb = box_problem(10);
    test::fill_fn(pb.force.u, [](double x, double y) { return std::sin(4 * y) + x; });
    test::fill_fn(pb.force.v, [](double x, double y) { return std::cos(5 * x) * y; });
    test::fill_fn(pb.eta, [](double x, double y) { return 1.0 + x * y; });
    return pb;
}

TEST(Saddle, ResultIsDiscretelySolenoidal) {
    const auto r = solve_saddle(swirl_problem(), SaddleOptions{});
    EXPECT_GT(r.u.max_abs(), 1e-4);
    EXPECT_LE(r.stats.div_max, 1e-10);
    EXPECT_LE(divergence(r.u).max_abs_interior(), 1e-10);
}

TEST(Saddle, AlternativeSolversAgree) {
    const SaddleProblem pb = swirl_problem();
    SaddleOptions base;
    base.div_rel_tol = 1e-12;
    const auto ref = solve_saddle(pb, base);

    SaddleOptions jac = base;
    jac.inner = InnerSolver::kJacobi;
    jac.relax_tol = 1e-13;
    const auto rj = solve_saddle(pb, jac);
    EXPECT_NEAR(rj.u.max_abs(), ref.u.max_abs(), 1e-6 * ref.u.max_abs());
    EXPECT_GT(rj.stats.inner_iters, 0);

    SaddleOptions ramp = base;
    ramp.method = PressureIteration::kCompressibilityRamp;
    ramp.max_iters = 20000;
    ramp.div_tol = 1e-7;
    ramp.div_rel_tol = 1e-9;
    const auto rr = solve_saddle(pb, ramp);
    EXPECT_LE(rr.stats.div_max, 1e-7);
    for (int j = 0; j < 10; ++j)
        for (int i = 1; i < 10; ++i) EXPECT_NEAR(rr.u.u(i, j), ref.u.u(i, j), 1e-4 * ref.u.max_abs());
    EXPECT_GT(rr.stats.c_p_final, 1.0);
}

TEST(Saddle, WarmStartFromSolutionConvergesImmediately) {
    const SaddleProblem pb = swirl_problem();
    const SaddleSystem sys(pb, SaddleOptions{});
    const auto cold = sys.solve(nullptr);
    const auto warm = sys.solve(&cold.p);
    EXPECT_LE(warm.stats.outer_iters, 1);
    EXPECT_LE(warm.stats.div_max, cold.stats.div_max * 10 + 1e-14);
}

TEST(Saddle, FloatingComponentsPerCapillary) {
    const auto g = StaggeredGrid::unit_square(16, 16);
    const auto mask = build_mask(GeometryKind::kCapillaries, 2, 0.5, g);
    SaddleProblem pb(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            if (mask.u_face(i, j) == FaceClass::kFluid) pb.u_at(i, j) = FaceRole::kUnknown;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.v_face(i, j) == FaceClass::kFluid) pb.v_at(i, j) = FaceRole::kUnknown;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.fluid(i, j)) {
                pb.cell_at(i, j) = CellRole::kUnknown;
                pb.eta(i, j) = 1.0;
            }
    EXPECT_EQ(SaddleSystem(pb, SaddleOptions{}).floating_components(), 2);
    EXPECT_EQ(SaddleSystem(box_problem(6), SaddleOptions{}).floating_components(), 1);
}

TEST(Saddle, MissingCoefficientRejected) {
    SaddleProblem pb = box_problem(4);
    pb.eta.fill(0.0);
    EXPECT_THROW(SaddleSystem(pb, SaddleOptions{}), std::invalid_argument);
}

TEST(Saddle, NonConvergenceReportsResidual) {
    SaddleOptions opt;
    opt.max_iters = 1;
    opt.div_tol = 1e-300;
    opt.div_rel_tol = 1e-300;
    try {
        (void)solve_saddle(swirl_problem(), opt);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_GT(e.residual(), 0.0);
    }
}

}  // namespace
}  // namespace muskat
