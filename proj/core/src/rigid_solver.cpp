#include "muskat/rigid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "muskat/grid_ops.hpp"

namespace muskat {

void StokesParams::validate() const {
    if (!(mu1 > 0.0)) throw std::invalid_argument("stokes: mu1 must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("stokes: eps must be positive");
    if (!(solver.c_p > 0.0)) throw std::invalid_argument("stokes: c_p must be positive");
    if (!(solver.c_p_growth >= 1.0)) throw std::invalid_argument("stokes: c_p_growth must be >= 1");
    if (!(solver.div_tol > 0.0)) throw std::invalid_argument("stokes: div_tol must be positive");
}

SaddleProblem rigid_problem(const Field& rho, const Field* mu, const CellMask& mask, const StokesParams& params) {
    params.validate();
    require_staggering(rho, Staggering::kCenter, "rigid_problem(rho)");
    if (mu != nullptr) require_staggering(*mu, Staggering::kCenter, "rigid_problem(mu)");
    if (!mask.faces_classified) throw std::invalid_argument("rigid_problem: mask faces not classified");
    const auto& g = mask.grid;
    SaddleProblem pb(g);
    const double e2 = params.eps * params.eps;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!mask.fluid(i, j)) continue;
            pb.cell_at(i, j) = CellRole::kUnknown;
            pb.eta(i, j) = (mu != nullptr ? (*mu)(i, j) : params.mu1) * e2;
        }
    auto role = [](FaceClass c) {
        switch (c) {
            case FaceClass::kFluid: return FaceRole::kUnknown;
            case FaceClass::kSolid: return FaceRole::kReflect;
            default: return FaceRole::kFixed;
        }
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) pb.u_at(i, j) = role(mask.u_face(i, j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            pb.v_at(i, j) = role(mask.v_face(i, j));
            if (pb.v_at(i, j) == FaceRole::kUnknown) pb.force.v(i, j) = params.gravity * 0.5 * (rho(i, j - 1) + rho(i, j));
        }
    return pb;
}

double fluid_divergence_max(const FaceFields& v, const CellMask& mask) {
    const Field d = divergence(v);
    double m = 0.0;
    for (int j = 0; j < mask.grid.ny; ++j)
        for (int i = 0; i < mask.grid.nx; ++i)
            if (mask.fluid(i, j)) m = std::max(m, std::abs(d(i, j)));
    return m;
}

FaceFields intermediate_velocity(const Field& rho, const CellMask& mask, const StokesParams& params, const Field* mu) {
    const SaddleSystem sys(rigid_problem(rho, mu, mask, params), params.solver);
    return sys.solve_velocity(Field(mask.grid, Staggering::kCenter));
}

namespace {

StokesResult run(const SaddleSystem& sys, const Field* p_init) {
    SaddleResult r = sys.solve(p_init);
    StokesResult out{std::move(r.u), std::move(r.p), {}};
    out.diag.div_max = r.stats.div_max;
    out.diag.outer_iters = r.stats.outer_iters;
    out.diag.inner_iters = r.stats.inner_iters;
    out.diag.c_p_final = r.stats.c_p_final;
    return out;
}

}  // namespace

StokesResult pressure_velocity_iteration(const FaceFields& v_tilde, const Field& rho, const CellMask& mask,
                                         const StokesParams& params, const Field* p_init, const Field* mu) {
    require_staggering(v_tilde.u, Staggering::kUFace, "pressure_velocity_iteration(u)");
    require_staggering(v_tilde.v, Staggering::kVFace, "pressure_velocity_iteration(v)");
    const bool cold = p_init == nullptr || p_init->max_abs_interior() == 0.0;
    const double d = fluid_divergence_max(v_tilde, mask);
    if (cold && d <= std::min(params.solver.div_tol,
                              params.solver.div_rel_tol * v_tilde.max_abs() / std::min(mask.grid.h1, mask.grid.h2))) {
        StokesResult out{v_tilde, Field(mask.grid, Staggering::kCenter), {}};
        out.diag.div_max = d;
        out.diag.c_p_final = params.solver.c_p;
        return out;
    }
    const SaddleSystem sys(rigid_problem(rho, mu, mask, params), params.solver);
    return run(sys, p_init);
}

StokesResult stationary_stokes_solve(const Field& rho, const CellMask& mask, const StokesParams& params,
                                     const Field* p_init, const Field* mu) {
    const SaddleSystem sys(rigid_problem(rho, mu, mask, params), params.solver);
    return run(sys, p_init);
}

}  // namespace muskat
