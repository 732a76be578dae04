#include "muskat/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace muskat {

const char* to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::kCapillaries: return "capillaries";
        case GeometryKind::kDisjointSquares: return "squares";
        case GeometryKind::kAllFluid: return "all_fluid";
    }
    return "?";
}

const char* to_string(FaceClass c) {
    switch (c) {
        case FaceClass::kFluid: return "fluid";
        case FaceClass::kSolid: return "solid";
        case FaceClass::kInterface: return "interface";
        case FaceClass::kOuter: return "outer";
    }
    return "?";
}

int CellMask::fluid_cell_count() const {
    int c = 0;
    for (auto x : chi) c += x != 0 ? 1 : 0;
    return c;
}

double CellMask::fluid_fraction() const { return static_cast<double>(fluid_cell_count()) / grid.num_cells(); }

int CellMask::count_u(FaceClass c) const {
    int k = 0;
    for (auto x : u_class) k += x == c ? 1 : 0;
    return k;
}

int CellMask::count_v(FaceClass c) const {
    int k = 0;
    for (auto x : v_class) k += x == c ? 1 : 0;
    return k;
}

StaggeredGrid periodic_grid(int n, int cells_per_period) {
    if (n < 1) throw std::invalid_argument("geometry: n must be >= 1");
    if (cells_per_period < 1) throw std::invalid_argument("geometry: cells_per_period must be >= 1");
    return StaggeredGrid::unit_square(n * cells_per_period, n * cells_per_period);
}

namespace {

// Number of cell centers (k + 0.5) lying in [0, len) for k = 0..p-1.
int cells_below(double len, int p) {
    int c = 0;
    for (int k = 0; k < p; ++k) c += (k + 0.5) < len ? 1 : 0;
    return c;
}

void require_block(int cells, const char* what) {
    if (cells < 2)
        throw std::invalid_argument(std::string("geometry: ") + what + " spans fewer than 2 cells (" +
                                    std::to_string(cells) + ")");
}

}  // namespace

CellMask build_mask(GeometryKind kind, int n, double m, const StaggeredGrid& grid, PorosityConvention convention) {
    if (n < 1) throw std::invalid_argument("geometry: n must be >= 1");
    CellMask mask;
    mask.grid = grid;
    mask.chi.assign(static_cast<std::size_t>(grid.num_cells()), 1);
    if (kind == GeometryKind::kAllFluid) return classify_faces(std::move(mask));

    if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("geometry: porosity must lie in (0, 1)");
    if (grid.nx % n != 0 || grid.ny % n != 0)
        throw std::invalid_argument("geometry: grid is not aligned with the period (nx, ny must be multiples of n)");
    const int px = grid.nx / n;
    const int py = grid.ny / n;
    if (px < 4 || (kind == GeometryKind::kDisjointSquares && py < 4))
        throw std::invalid_argument("geometry: resolution too coarse, a period maps to fewer than 4 cells");

    if (kind == GeometryKind::kCapillaries) {
        const double width = m * px;  // fluid strip width in cells
        const int fluid_cols = cells_below(width, px);
        require_block(fluid_cols, "capillary");
        require_block(px - fluid_cols, "solid strip");
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) mask.chi[static_cast<std::size_t>(i + j * grid.nx)] = (i % px) < fluid_cols;
    } else {
        const double solid_frac = convention == PorosityConvention::kFluidFraction ? 1.0 - m : m;
        const double sx = std::sqrt(solid_frac) * px;
        const double sy = std::sqrt(solid_frac) * py;
        auto inside = [](int k, int p, double side) { return std::abs((k + 0.5) - 0.5 * p) < 0.5 * side; };
        int solid_x = 0;
        for (int k = 0; k < px; ++k) solid_x += inside(k, px, sx) ? 1 : 0;
        int solid_y = 0;
        for (int k = 0; k < py; ++k) solid_y += inside(k, py, sy) ? 1 : 0;
        require_block(solid_x, "solid square");
        require_block(solid_y, "solid square");
        require_block(px - solid_x, "fluid gap");
        require_block(py - solid_y, "fluid gap");
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                mask.chi[static_cast<std::size_t>(i + j * grid.nx)] = !(inside(i % px, px, sx) && inside(j % py, py, sy));
    }
    return classify_faces(std::move(mask));
}

CellMask classify_faces(CellMask mask) {
    const auto& g = mask.grid;
    auto pair_class = [](bool a, bool b) {
        if (a && b) return FaceClass::kFluid;
        if (!a && !b) return FaceClass::kSolid;
        return FaceClass::kInterface;
    };
    mask.u_class.assign(static_cast<std::size_t>((g.nx + 1) * g.ny), FaceClass::kOuter);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            mask.u_class[static_cast<std::size_t>(i + j * (g.nx + 1))] = pair_class(mask.fluid(i - 1, j), mask.fluid(i, j));
    mask.v_class.assign(static_cast<std::size_t>(g.nx * (g.ny + 1)), FaceClass::kOuter);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            mask.v_class[static_cast<std::size_t>(i + j * g.nx)] = pair_class(mask.fluid(i, j - 1), mask.fluid(i, j));
    mask.faces_classified = true;
    return mask;
}

std::vector<InterfaceFace> interface_faces(const CellMask& mask) {
    const auto& g = mask.grid;
    std::vector<InterfaceFace> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            if (mask.u_face(i, j) == FaceClass::kInterface) out.push_back({true, i, j, mask.fluid(i, j) ? 1 : -1, 0});
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.v_face(i, j) == FaceClass::kInterface) out.push_back({false, i, j, 0, mask.fluid(i, j) ? 1 : -1});
    return out;
}

}  // namespace muskat
