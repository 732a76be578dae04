#include "muskat/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "muskat/errors.hpp"
#include "muskat/grid_ops.hpp"

namespace muskat {

namespace {

bool in_scope(const CellMask& mask, TransportScope scope, int i, int j) {
    return scope == TransportScope::kAllCells || mask.fluid(i, j);
}

}  // namespace

TransportState init_density(const CellMask& mask, const InitialData& d) {
    if (!(d.interface_height > 0.0 && d.interface_height < 1.0))
        throw std::invalid_argument("init_density: interface_height must lie in (0, 1)");
    const auto& g = mask.grid;
    TransportState s;
    s.rho = Field(g, Staggering::kCenter);
    s.mu = Field(g, Staggering::kCenter);
    s.phase = Field(g, Staggering::kCenter);
    s.scope = d.include_solid ? TransportScope::kAllCells : TransportScope::kFluidCells;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double h = d.interface_height +
                             d.perturbation * std::cos(2.0 * std::numbers::pi * d.wavenumber * g.x1_center(i));
            const bool upper = g.x2_center(j) < h;
            const bool fluid = mask.fluid(i, j);
            if (!fluid && !d.include_solid) continue;
            s.rho(i, j) = fluid ? (upper ? d.rho_plus : d.rho_minus) : d.rho_s;
            s.mu(i, j) = upper ? d.mu_plus : d.mu_minus;
            s.phase(i, j) = upper && fluid ? 1.0 : 0.0;
        }
    s.rho_lo = std::numeric_limits<double>::infinity();
    s.rho_hi = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (in_scope(mask, s.scope, i, j)) {
                s.rho_lo = std::min(s.rho_lo, s.rho(i, j));
                s.rho_hi = std::max(s.rho_hi, s.rho(i, j));
            }
    return s;
}

double courant_rate(const FaceFields& v, const StaggeredGrid& grid) {
    return v.u.max_abs_interior() / grid.h1 + v.v.max_abs_interior() / grid.h2;
}

double choose_dt(const FaceFields& v, const StaggeredGrid& grid, double cfl, double dt_min, double dt_max) {
    if (!(cfl > 0.0)) throw std::invalid_argument("choose_dt: cfl must be positive");
    if (!(dt_min <= dt_max)) throw std::invalid_argument("choose_dt: dt_min exceeds dt_max");
    const double rate = courant_rate(v, grid);
    if (!std::isfinite(rate)) throw std::invalid_argument("choose_dt: velocity is not finite");
    if (rate == 0.0) return dt_max;
    return std::clamp(cfl / rate, dt_min, dt_max);
}

Field upwind_update(const Field& q, const FaceFields& v, double dt) {
    require_staggering(q, Staggering::kCenter, "upwind_update(q)");
    require_staggering(v.u, Staggering::kUFace, "upwind_update(u)");
    require_staggering(v.v, Staggering::kVFace, "upwind_update(v)");
    const auto& g = q.grid();
    // Donor-cell fluxes; boundary faces use the interior neighbour (their velocity is zero).
    auto flux_u = [&](int i, int j) {
        const double u = v.u(i, j);
        if (u == 0.0) return 0.0;
        const int donor = u > 0.0 ? std::max(i - 1, 0) : std::min(i, g.nx - 1);
        return u * q(donor, j);
    };
    auto flux_v = [&](int i, int j) {
        const double w = v.v(i, j);
        if (w == 0.0) return 0.0;
        const int donor = w > 0.0 ? std::max(j - 1, 0) : std::min(j, g.ny - 1);
        return w * q(i, donor);
    };
    Field out = q;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = q(i, j) - dt * ((flux_u(i + 1, j) - flux_u(i, j)) / g.h1 + (flux_v(i, j + 1) - flux_v(i, j)) / g.h2);
    return out;
}

double total_mass(const Field& q, const CellMask& mask, TransportScope scope) {
    const auto& g = mask.grid;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (in_scope(mask, scope, i, j)) s += q(i, j);
    return s * g.cell_area();
}

TransportState upwind_step(TransportState state, const FaceFields& v, const CellMask& mask) {
    const auto& g = mask.grid;
    const double rate = courant_rate(v, g);
    if (state.dt * rate > state.cfl * (1.0 + 1e-12)) throw CflError(state.dt, state.cfl / rate);
    for (int j = 0; j < g.ny; ++j)
        if (v.u(0, j) != 0.0 || v.u(g.nx, j) != 0.0)
            throw std::invalid_argument("upwind_step: nonzero normal velocity on the outer boundary");
    for (int i = 0; i < g.nx; ++i)
        if (v.v(i, 0) != 0.0 || v.v(i, g.ny) != 0.0)
            throw std::invalid_argument("upwind_step: nonzero normal velocity on the outer boundary");
    if (state.dt == 0.0) return state;

    state.rho = upwind_update(state.rho, v, state.dt);
    state.mu = upwind_update(state.mu, v, state.dt);
    state.phase = upwind_update(state.phase, v, state.dt);
    state.t += state.dt;

    // Bound check: a discretely solenoidal field keeps rho within the initial range up
    // to round-off; a residual divergence can add at most dt*|div|*|rho| per step, and
    // overshoots from earlier steps carry forward.
    const Field div = divergence(v);
    double div_max = 0.0;
    double rho_abs = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (in_scope(mask, state.scope, i, j)) {
                div_max = std::max(div_max, std::abs(div(i, j)));
                rho_abs = std::max(rho_abs, std::abs(state.rho(i, j)));
            }
    state.bound_slack += 64.0 * std::numeric_limits<double>::epsilon() * rho_abs + state.dt * div_max * rho_abs;
    const double tol = state.bound_slack;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!in_scope(mask, state.scope, i, j)) continue;
            const double r = state.rho(i, j);
            if (r < state.rho_lo - tol || r > state.rho_hi + tol) {
                const double excess = std::max(state.rho_lo - r, r - state.rho_hi);
                throw SolverError("upwind_step: density left the initial bounds (maximum principle)", excess);
            }
        }
    return state;
}

}  // namespace muskat
