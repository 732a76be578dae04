#include "muskat/elastic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "muskat/errors.hpp"
#include "muskat/grid_ops.hpp"

namespace muskat {

void ElasticParams::validate() const {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("elastic: lambda0 must be positive");
    if (!(mu0 > 0.0)) throw std::invalid_argument("elastic: mu0 must be positive");
    if (!(rho_s > 0.0)) throw std::invalid_argument("elastic: rho_s must be positive");
    if (!(cfl > 0.0)) throw std::invalid_argument("elastic: cfl must be positive");
    if (!(solver.div_tol > 0.0)) throw std::invalid_argument("elastic: div_tol must be positive");
}

namespace {

bool solid_cell(const CellMask& mask, int i, int j) {
    return i >= 0 && i < mask.grid.nx && j >= 0 && j < mask.grid.ny && !mask.fluid(i, j);
}

// Solid cells connected through shared faces, labelled from 0.
std::vector<int> solid_components(const CellMask& mask, int& count) {
    const auto& g = mask.grid;
    std::vector<int> label(static_cast<std::size_t>(g.num_cells()), -1);
    count = 0;
    std::vector<std::pair<int, int>> stack;
    for (int j0 = 0; j0 < g.ny; ++j0)
        for (int i0 = 0; i0 < g.nx; ++i0) {
            if (mask.fluid(i0, j0) || label[static_cast<std::size_t>(i0 + j0 * g.nx)] >= 0) continue;
            label[static_cast<std::size_t>(i0 + j0 * g.nx)] = count;
            stack.emplace_back(i0, j0);
            while (!stack.empty()) {
                const auto [i, j] = stack.back();
                stack.pop_back();
                const int nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
                for (const auto& nb : nbr) {
                    if (!solid_cell(mask, nb[0], nb[1])) continue;
                    auto& l = label[static_cast<std::size_t>(nb[0] + nb[1] * g.nx)];
                    if (l < 0) {
                        l = count;
                        stack.emplace_back(nb[0], nb[1]);
                    }
                }
            }
            ++count;
        }
    return label;
}

// Component-wise conservative Laplacian at one face with cell coefficient coef.
// Corner coefficients average the in-domain adjacent cells; with skip_zero set,
// cells with zero coefficient are left out of the average. Off-domain neighbours
// are no-slip ghosts (minus the face value).
double face_operator(const FaceFields& f, bool is_u, int i, int j, const Field& coef, bool skip_zero) {
    const auto& g = coef.grid();
    auto corner = [&](int ci, int cj) {
        if (skip_zero) return corner_coefficient(coef, ci, cj);
        double s = 0.0;
        int n = 0;
        for (int dj = -1; dj <= 0; ++dj)
            for (int di = -1; di <= 0; ++di) {
                const int a = ci + di;
                const int b = cj + dj;
                if (a < 0 || a >= g.nx || b < 0 || b >= g.ny) continue;
                s += coef(a, b);
                ++n;
            }
        return n > 0 ? s / n : 0.0;
    };
    const double r1 = 1.0 / (g.h1 * g.h1);
    const double r2 = 1.0 / (g.h2 * g.h2);
    if (is_u) {
        const Field& u = f.u;
        const double c = u(i, j);
        auto at = [&](int a, int b) { return (a < 0 || a > g.nx || b < 0 || b >= g.ny) ? -c : u(a, b); };
        const double ee = (i < g.nx) ? coef(i, j) : 0.0;
        const double ew = (i > 0) ? coef(i - 1, j) : 0.0;
        return (ee * (at(i + 1, j) - c) - ew * (c - at(i - 1, j))) * r1 +
               (corner(i, j + 1) * (at(i, j + 1) - c) - corner(i, j) * (c - at(i, j - 1))) * r2;
    }
    const Field& v = f.v;
    const double c = v(i, j);
    auto at = [&](int a, int b) { return (a < 0 || a >= g.nx || b < 0 || b > g.ny) ? -c : v(a, b); };
    const double en = (j < g.ny) ? coef(i, j) : 0.0;
    const double es = (j > 0) ? coef(i, j - 1) : 0.0;
    return (en * (at(i, j + 1) - c) - es * (c - at(i, j - 1))) * r2 +
           (corner(i + 1, j) * (at(i + 1, j) - c) - corner(i, j) * (c - at(i - 1, j))) * r1;
}

bool has_solid_value(FaceClass c) { return c == FaceClass::kSolid || c == FaceClass::kInterface; }

}  // namespace

LameResult solve_lame(const Field& rho_s, const FaceFields& w_dirichlet, const CellMask& mask,
                      const ElasticParams& params, const Field* p_init, const FaceFields* extra_force) {
    params.validate();
    require_staggering(rho_s, Staggering::kCenter, "solve_lame(rho_s)");
    require_staggering(w_dirichlet.u, Staggering::kUFace, "solve_lame(w.u)");
    require_staggering(w_dirichlet.v, Staggering::kVFace, "solve_lame(w.v)");
    if (!mask.faces_classified) throw std::invalid_argument("solve_lame: mask faces not classified");
    const auto& g = mask.grid;
    SaddleProblem pb(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!mask.fluid(i, j)) {
                pb.cell_at(i, j) = CellRole::kUnknown;
                pb.eta(i, j) = params.lambda0;
            }
    auto set_face = [&](FaceClass c, FaceRole& role, double& fixed, double given, const char* which, int i, int j) {
        if (c == FaceClass::kSolid) {
            role = FaceRole::kUnknown;
            return;
        }
        role = FaceRole::kFixed;
        if (c == FaceClass::kOuter) {
            fixed = 0.0;
            return;
        }
        if (!std::isfinite(given)) {
            if (c == FaceClass::kInterface)
                throw std::invalid_argument(std::string("solve_lame: Dirichlet data missing on interface ") + which +
                                            "-face (" + std::to_string(i) + "," + std::to_string(j) + ")");
            given = 0.0;
        }
        fixed = given;
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) set_face(mask.u_face(i, j), pb.u_at(i, j), pb.fixed.u(i, j), w_dirichlet.u(i, j), "u", i, j);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            set_face(mask.v_face(i, j), pb.v_at(i, j), pb.fixed.v(i, j), w_dirichlet.v(i, j), "v", i, j);
            if (pb.v_at(i, j) == FaceRole::kUnknown) pb.force.v(i, j) = params.gravity * 0.5 * (rho_s(i, j - 1) + rho_s(i, j));
        }
    if (extra_force != nullptr) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) pb.force.u(i, j) += extra_force->u(i, j);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) pb.force.v(i, j) += extra_force->v(i, j);
    }

    const SaddleSystem sys(pb, params.solver);
    SaddleResult r = sys.solve(p_init);

    // Each solid block keeps the mean warm-start pressure it had.
    int ncomp = 0;
    const auto label = solid_components(mask, ncomp);
    if (p_init != nullptr && ncomp > 0) {
        std::vector<double> sum(static_cast<std::size_t>(ncomp), 0.0);
        std::vector<int> cnt(static_cast<std::size_t>(ncomp), 0);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int l = label[static_cast<std::size_t>(i + j * g.nx)];
                if (l < 0) continue;
                sum[static_cast<std::size_t>(l)] += (*p_init)(i, j);
                ++cnt[static_cast<std::size_t>(l)];
            }
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int l = label[static_cast<std::size_t>(i + j * g.nx)];
                if (l >= 0) r.p(i, j) += sum[static_cast<std::size_t>(l)] / cnt[static_cast<std::size_t>(l)];
            }
    }
    return {std::move(r.u), std::move(r.p), r.stats};
}

std::vector<Traction> interface_traction(const FaceFields& w, const Field& p, const CellMask& mask,
                                         const ElasticParams& params) {
    const auto& g = mask.grid;
    const double lam = params.lambda0;
    std::vector<Traction> out;
    for (const auto& f : interface_faces(mask)) {
        Traction t{f, 0.0, 0.0};
        if (f.is_u) {
            const int i = f.i;
            const int j = f.j;
            const int s = -f.n1;
            auto valid_u = [&](int a, int b) { return a >= 0 && a <= g.nx && b >= 0 && b < g.ny && has_solid_value(mask.u_face(a, b)); };
            // normal derivative of w1 along x1
            double d11 = 0.0;
            if (valid_u(i + 2 * s, j)) {
                d11 = s * (-3.0 * w.u(i, j) + 4.0 * w.u(i + s, j) - w.u(i + 2 * s, j)) / (2.0 * g.h1);
            } else if (valid_u(i + s, j)) {
                d11 = s * (w.u(i + s, j) - w.u(i, j)) / g.h1;
            }
            // tangential derivative of w1 along the face line
            double dw1dx2 = 0.0;
            const bool up = valid_u(i, j + 1);
            const bool dn = valid_u(i, j - 1);
            if (up && dn) dw1dx2 = (w.u(i, j + 1) - w.u(i, j - 1)) / (2.0 * g.h2);
            else if (up) dw1dx2 = (w.u(i, j + 1) - w.u(i, j)) / g.h2;
            else if (dn) dw1dx2 = (w.u(i, j) - w.u(i, j - 1)) / g.h2;
            // normal derivative of w2 from cell-center samples at h/2, 3h/2, 5h/2
            const int c0 = s < 0 ? i - 1 : i;
            auto w2c = [&](int ci) { return 0.5 * (w.v(ci, j) + w.v(ci, j + 1)); };
            double dw2dx1 = 0.0;
            if (solid_cell(mask, c0 + 2 * s, j) && solid_cell(mask, c0 + s, j)) {
                dw2dx1 = s * (-2.0 * w2c(c0) + 3.0 * w2c(c0 + s) - w2c(c0 + 2 * s)) / g.h1;
            } else if (solid_cell(mask, c0 + s, j)) {
                dw2dx1 = s * (w2c(c0 + s) - w2c(c0)) / g.h1;
            }
            const double d21 = 0.5 * (dw1dx2 + dw2dx1);
            const double pf = 0.5 * (p(i - 1, j) + p(i, j));
            t.a1 = lam * d11 * f.n1 - pf * f.n1;
            t.a2 = lam * d21 * f.n1;
        } else {
            const int i = f.i;
            const int j = f.j;
            const int s = -f.n2;
            auto valid_v = [&](int a, int b) { return a >= 0 && a < g.nx && b >= 0 && b <= g.ny && has_solid_value(mask.v_face(a, b)); };
            double d22 = 0.0;
            if (valid_v(i, j + 2 * s)) {
                d22 = s * (-3.0 * w.v(i, j) + 4.0 * w.v(i, j + s) - w.v(i, j + 2 * s)) / (2.0 * g.h2);
            } else if (valid_v(i, j + s)) {
                d22 = s * (w.v(i, j + s) - w.v(i, j)) / g.h2;
            }
            double dw2dx1 = 0.0;
            const bool rt = valid_v(i + 1, j);
            const bool lf = valid_v(i - 1, j);
            if (rt && lf) dw2dx1 = (w.v(i + 1, j) - w.v(i - 1, j)) / (2.0 * g.h1);
            else if (rt) dw2dx1 = (w.v(i + 1, j) - w.v(i, j)) / g.h1;
            else if (lf) dw2dx1 = (w.v(i, j) - w.v(i - 1, j)) / g.h1;
            const int c0 = s < 0 ? j - 1 : j;
            auto w1c = [&](int cj) { return 0.5 * (w.u(i, cj) + w.u(i + 1, cj)); };
            double dw1dx2 = 0.0;
            if (solid_cell(mask, i, c0 + 2 * s) && solid_cell(mask, i, c0 + s)) {
                dw1dx2 = s * (-2.0 * w1c(c0) + 3.0 * w1c(c0 + s) - w1c(c0 + 2 * s)) / g.h2;
            } else if (solid_cell(mask, i, c0 + s)) {
                dw1dx2 = s * (w1c(c0 + s) - w1c(c0)) / g.h2;
            }
            const double d12 = 0.5 * (dw1dx2 + dw2dx1);
            const double pf = 0.5 * (p(i, j - 1) + p(i, j));
            t.a1 = lam * d12 * f.n2;
            t.a2 = lam * d22 * f.n2 - pf * f.n2;
        }
        out.push_back(t);
    }
    return out;
}

FluidResult solve_fluid_with_traction(const Field& rho, const std::vector<Traction>& traction, const CellMask& mask,
                                      const ElasticParams& params, const Field* mu, const Field* p_init) {
    params.validate();
    require_staggering(rho, Staggering::kCenter, "solve_fluid_with_traction(rho)");
    if (!mask.faces_classified) throw std::invalid_argument("solve_fluid_with_traction: mask faces not classified");
    const auto& g = mask.grid;
    SaddleProblem pb(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.fluid(i, j)) {
                pb.cell_at(i, j) = CellRole::kUnknown;
                pb.eta(i, j) = mu != nullptr ? (*mu)(i, j) : params.mu0;
            }
    auto role = [](FaceClass c) {
        switch (c) {
            case FaceClass::kFluid:
            case FaceClass::kInterface: return FaceRole::kUnknown;
            case FaceClass::kSolid: return FaceRole::kMirror;
            default: return FaceRole::kFixed;
        }
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) pb.u_at(i, j) = role(mask.u_face(i, j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            pb.v_at(i, j) = role(mask.v_face(i, j));
            if (pb.v_at(i, j) == FaceRole::kUnknown) {
                const double r0 = j > 0 ? rho(i, j - 1) : rho(i, j);
                const double r1 = j < g.ny ? rho(i, j) : rho(i, j - 1);
                pb.force.v(i, j) = params.gravity * 0.5 * (r0 + r1);
            }
        }

    // Traction lookup per interface face.
    FaceFields a1(g, 0.0);
    FaceFields a2(g, 0.0);
    FaceFields has(g, 0.0);
    for (const auto& t : traction) {
        if (t.face.is_u) {
            a1.u(t.face.i, t.face.j) = t.a1;
            a2.u(t.face.i, t.face.j) = t.a2;
            has.u(t.face.i, t.face.j) = 1.0;
            pb.face_pressure.u(t.face.i, t.face.j) = -(t.a1 * t.face.n1);
        } else {
            a1.v(t.face.i, t.face.j) = t.a1;
            a2.v(t.face.i, t.face.j) = t.a2;
            has.v(t.face.i, t.face.j) = 1.0;
            pb.face_pressure.v(t.face.i, t.face.j) = -(t.a2 * t.face.n2);
        }
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            if (mask.u_face(i, j) == FaceClass::kInterface && has.u(i, j) == 0.0)
                throw std::invalid_argument("solve_fluid_with_traction: traction missing on an interface face");
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.v_face(i, j) == FaceClass::kInterface && has.v(i, j) == 0.0)
                throw std::invalid_argument("solve_fluid_with_traction: traction missing on an interface face");

    // Tangential ghosts in the solid: the one-sided wall derivative equals 2 A_t / mu.
    FaceFields src_sum(g, 0.0);
    FaceFields src_cnt(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            if (pb.u_at(i, j) != FaceRole::kUnknown) continue;
            for (int d : {-1, 1}) {
                const int jj = j + d;
                if (jj < 0 || jj >= g.ny || mask.u_face(i, jj) != FaceClass::kSolid) continue;
                const int edge = std::max(j, jj);
                double at = 0.0;
                int n = 0;
                for (int ci : {i - 1, i}) {
                    if (ci < 0 || ci >= g.nx || mask.v_face(ci, edge) != FaceClass::kInterface) continue;
                    at += a1.v(ci, edge);
                    ++n;
                }
                if (n > 0) at /= n;
                const double eta_c = corner_coefficient(pb.eta, i, edge);
                src_sum.u(i, jj) += -2.0 * at * g.h2 / eta_c;
                src_cnt.u(i, jj) += 1.0;
            }
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (pb.v_at(i, j) != FaceRole::kUnknown) continue;
            for (int d : {-1, 1}) {
                const int ii = i + d;
                if (ii < 0 || ii >= g.nx || mask.v_face(ii, j) != FaceClass::kSolid) continue;
                const int edge = std::max(i, ii);
                double at = 0.0;
                int n = 0;
                for (int cj : {j - 1, j}) {
                    if (cj < 0 || cj >= g.ny || mask.u_face(edge, cj) != FaceClass::kInterface) continue;
                    at += a2.u(edge, cj);
                    ++n;
                }
                if (n > 0) at /= n;
                const double eta_c = corner_coefficient(pb.eta, edge, j);
                src_sum.v(ii, j) += -2.0 * at * g.h1 / eta_c;
                src_cnt.v(ii, j) += 1.0;
            }
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            if (src_cnt.u(i, j) > 0.0) pb.mirror_tangential.u(i, j) = src_sum.u(i, j) / src_cnt.u(i, j);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (src_cnt.v(i, j) > 0.0) pb.mirror_tangential.v(i, j) = src_sum.v(i, j) / src_cnt.v(i, j);

    const SaddleSystem sys(pb, params.solver);
    SaddleResult r = sys.solve(p_init);
    return {std::move(r.u), std::move(r.p), r.stats};
}

CoupledState make_coupled_state(const CellMask& mask, TransportState transport) {
    CoupledState s;
    s.w_f = FaceFields(mask.grid);
    s.w_s = FaceFields(mask.grid);
    s.velocity = FaceFields(mask.grid);
    s.p = Field(mask.grid, Staggering::kCenter);
    s.transport = std::move(transport);
    return s;
}

CoupledState coupled_step(CoupledState state, double dt, const CellMask& mask, const ElasticParams& params) {
    params.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("coupled_step: dt must be positive");
    const auto& g = mask.grid;

    // Unified displacement at step n.
    FaceFields wn(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            wn.u(i, j) = mask.u_face(i, j) == FaceClass::kSolid ? state.w_s.u(i, j) : state.w_f.u(i, j);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            wn.v(i, j) = mask.v_face(i, j) == FaceClass::kSolid ? state.w_s.v(i, j) : state.w_f.v(i, j);

    // Step 1: Lame problem with the fluid displacement trace.
    Field rho_s(g, Staggering::kCenter);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!mask.fluid(i, j)) rho_s(i, j) = params.rho_s;
    const LameResult lame = solve_lame(rho_s, state.w_f, mask, params, &state.p);

    // Step 2: interface traction from the solid side.
    Field p_merge = state.p;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!mask.fluid(i, j)) p_merge(i, j) = lame.p_s(i, j);
    state.traction = interface_traction(lame.w_s, p_merge, mask, params);

    // Step 3: implicit whole-domain solve for the velocity.
    Field lam_cell(g, Staggering::kCenter);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!mask.fluid(i, j)) lam_cell(i, j) = params.lambda0;
    FaceFields elastic_force(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) elastic_force.u(i, j) = face_operator(wn, true, i, j, lam_cell, false);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) elastic_force.v(i, j) = face_operator(wn, false, i, j, lam_cell, false);

    const Field& rho = state.transport.rho;
    SaddleResult sol;
    Field eta(g, Staggering::kCenter);
    int retries = 0;
    for (;;) {
        SaddleProblem pb(g);
        std::fill(pb.cell_role.begin(), pb.cell_role.end(), CellRole::kUnknown);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                pb.eta(i, j) = mask.fluid(i, j) ? state.transport.mu(i, j) : params.lambda0 * dt;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const bool outer = mask.u_face(i, j) == FaceClass::kOuter;
                pb.u_at(i, j) = outer ? FaceRole::kFixed : FaceRole::kUnknown;
                if (!outer) pb.force.u(i, j) = elastic_force.u(i, j);
            }
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const bool outer = mask.v_face(i, j) == FaceClass::kOuter;
                pb.v_at(i, j) = outer ? FaceRole::kFixed : FaceRole::kUnknown;
                if (!outer) pb.force.v(i, j) = params.gravity * 0.5 * (rho(i, j - 1) + rho(i, j)) + elastic_force.v(i, j);
            }
        eta = pb.eta;
        sol = SaddleSystem(pb, params.solver).solve(&state.p);
        const double rate = courant_rate(sol.u, g);
        if (dt * rate <= params.cfl * (1.0 + 1e-12)) break;
        if (retries >= params.max_dt_retries) throw CflError(dt, params.cfl / rate);
        dt = 0.9 * params.cfl / rate;
        ++retries;
    }

    // Interface momentum residual of the final solution.
    double residual = 0.0;
    for (const auto& f : interface_faces(mask)) {
        double r = 0.0;
        if (f.is_u) {
            r = face_operator(sol.u, true, f.i, f.j, eta, true) + elastic_force.u(f.i, f.j) -
                (sol.p(f.i, f.j) - sol.p(f.i - 1, f.j)) / g.h1;
        } else {
            r = face_operator(sol.u, false, f.i, f.j, eta, true) + elastic_force.v(f.i, f.j) +
                params.gravity * 0.5 * (rho(f.i, f.j - 1) + rho(f.i, f.j)) - (sol.p(f.i, f.j) - sol.p(f.i, f.j - 1)) / g.h2;
        }
        residual = std::max(residual, std::abs(r));
    }

    // Mixture density transport with the unified velocity.
    state.transport.dt = dt;
    state.transport.cfl = params.cfl;
    state.transport = upwind_step(std::move(state.transport), sol.u, mask);

    // Step 4: displacement update.
    FaceFields w_f(g);
    FaceFields w_s(g);
    double mismatch = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double w = wn.u(i, j) + dt * sol.u.u(i, j);
            const FaceClass c = mask.u_face(i, j);
            if (c != FaceClass::kSolid) w_f.u(i, j) = w;
            if (has_solid_value(c)) w_s.u(i, j) = w;
            if (c == FaceClass::kSolid) mismatch = std::max(mismatch, std::abs(lame.w_s.u(i, j) - w));
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double w = wn.v(i, j) + dt * sol.u.v(i, j);
            const FaceClass c = mask.v_face(i, j);
            if (c != FaceClass::kSolid) w_f.v(i, j) = w;
            if (has_solid_value(c)) w_s.v(i, j) = w;
            if (c == FaceClass::kSolid) mismatch = std::max(mismatch, std::abs(lame.w_s.v(i, j) - w));
        }
    double continuity = 0.0;
    for (const auto& f : interface_faces(mask))
        continuity = std::max(continuity, f.is_u ? std::abs(w_f.u(f.i, f.j) - w_s.u(f.i, f.j))
                                                 : std::abs(w_f.v(f.i, f.j) - w_s.v(f.i, f.j)));

    state.w_f = std::move(w_f);
    state.w_s = std::move(w_s);
    state.velocity = std::move(sol.u);
    state.p = std::move(sol.p);
    state.diag.dt = dt;
    state.diag.dt_retries = retries;
    state.diag.div_max = sol.stats.div_max;
    state.diag.lame_div_max = lame.stats.div_max;
    state.diag.continuity = continuity;
    state.diag.traction_residual = residual;
    state.diag.lame_mismatch = mismatch;
    state.diag.outer_iters = sol.stats.outer_iters;
    state.diag.inner_iters = sol.stats.inner_iters + lame.stats.inner_iters;
    return state;
}

}  // namespace muskat
