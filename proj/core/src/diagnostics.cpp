#include "muskat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace muskat {

std::vector<double> row_average(const Field& rho, const CellMask& mask) {
    const auto& g = mask.grid;
    std::vector<double> out(static_cast<std::size_t>(g.ny), std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < g.ny; ++j) {
        double s = 0.0;
        int n = 0;
        for (int i = 0; i < g.nx; ++i)
            if (mask.fluid(i, j)) {
                s += rho(i, j);
                ++n;
            }
        if (n > 0) out[static_cast<std::size_t>(j)] = s / n;
    }
    return out;
}

double mixing_zone_width_profile(const std::vector<double>& profile, double h2, double rho_plus, double rho_minus,
                                 double theta) {
    if (!(theta > 0.0 && theta < 0.5)) throw std::invalid_argument("mixing_zone_width: theta must lie in (0, 0.5)");
    const double d = rho_plus - rho_minus;
    if (d == 0.0) return 0.0;
    const double lo = std::min(rho_plus, rho_minus) + theta * std::abs(d);
    const double hi = std::max(rho_plus, rho_minus) - theta * std::abs(d);
    int rows = 0;
    for (double r : profile)
        if (std::isfinite(r) && r > lo && r < hi) ++rows;
    return rows * h2;
}

double mixing_zone_width(const Field& rho, const CellMask& mask, double rho_plus, double rho_minus, double theta) {
    return mixing_zone_width_profile(row_average(rho, mask), mask.grid.h2, rho_plus, rho_minus, theta);
}

double interface_mean_height(const Field& phase, const CellMask& mask) {
    const auto& g = mask.grid;
    double mass = 0.0;
    double moment = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.fluid(i, j)) {
                mass += phase(i, j);
                moment += phase(i, j) * g.x2_center(j);
            }
    return mass > 0.0 ? 2.0 * moment / mass : 0.0;
}

PhaseVolumes phase_volumes(const Field& rho, const CellMask& mask, double rho_plus, double rho_minus, double rel_tol) {
    const auto& g = mask.grid;
    PhaseVolumes v;
    const double tol = rel_tol * std::max(std::abs(rho_plus), std::abs(rho_minus));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!mask.fluid(i, j)) continue;
            const double r = rho(i, j);
            if (std::abs(r - rho_plus) <= tol) v.plus += 1.0;
            else if (std::abs(r - rho_minus) <= tol) v.minus += 1.0;
            else v.mixed += 1.0;
        }
    const double a = g.cell_area();
    v.plus *= a;
    v.minus *= a;
    v.mixed *= a;
    return v;
}

std::pair<double, double> fluid_extrema(const Field& rho, const CellMask& mask) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 0; j < mask.grid.ny; ++j)
        for (int i = 0; i < mask.grid.nx; ++i)
            if (mask.fluid(i, j)) {
                lo = std::min(lo, rho(i, j));
                hi = std::max(hi, rho(i, j));
            }
    return {lo, hi};
}

}  // namespace muskat
