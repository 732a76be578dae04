#include "muskat/grid_ops.hpp"

#include <stdexcept>

namespace muskat {

Field divergence(const Field& u, const Field& v) {
    require_staggering(u, Staggering::kUFace, "divergence(u)");
    require_staggering(v, Staggering::kVFace, "divergence(v)");
    const auto& g = u.grid();
    if (!(v.grid() == g)) throw std::invalid_argument("divergence: fields live on different grids");
    Field d(g, Staggering::kCenter);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) d(i, j) = (u(i + 1, j) - u(i, j)) / g.h1 + (v(i, j + 1) - v(i, j)) / g.h2;
    return d;
}

FaceFields gradient(const Field& p) {
    require_staggering(p, Staggering::kCenter, "gradient");
    const auto& g = p.grid();
    FaceFields out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) out.u(i, j) = (p(i, j) - p(i - 1, j)) / g.h1;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.v(i, j) = (p(i, j) - p(i, j - 1)) / g.h2;
    return out;
}

double corner_coefficient(const Field& eta, int i, int j) {
    const auto& g = eta.grid();
    double sum = 0.0;
    int count = 0;
    for (int dj = -1; dj <= 0; ++dj)
        for (int di = -1; di <= 0; ++di) {
            const int ci = i + di;
            const int cj = j + dj;
            if (ci < 0 || ci >= g.nx || cj < 0 || cj >= g.ny) continue;
            const double e = eta(ci, cj);
            if (e > 0.0) {
                sum += e;
                ++count;
            }
        }
    return count > 0 ? sum / count : 0.0;
}

namespace {

bool targeted(FaceClass c, LaplacianTarget t) {
    return t == LaplacianTarget::kFluidFaces ? c == FaceClass::kFluid : c == FaceClass::kSolid;
}

void require_classified(const CellMask& mask) {
    if (!mask.faces_classified) throw std::invalid_argument("face classes are not available; call classify_faces");
}

}  // namespace

FaceFields masked_vector_laplacian(const FaceFields& f, const CellMask& mask, LaplacianTarget target) {
    Field eta(mask.grid, Staggering::kCenter, 1.0);
    return masked_vector_laplacian(f, mask, eta, target);
}

FaceFields masked_vector_laplacian(const FaceFields& f, const CellMask& mask, const Field& eta,
                                   LaplacianTarget target) {
    require_classified(mask);
    require_staggering(eta, Staggering::kCenter, "masked_vector_laplacian(eta)");
    const auto& g = mask.grid;
    const double r1 = 1.0 / (g.h1 * g.h1);
    const double r2 = 1.0 / (g.h2 * g.h2);
    FaceFields out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            if (!targeted(mask.u_face(i, j), target)) continue;
            const auto& u = f.u;
            const double ee = eta(i, j);
            const double ew = eta(i - 1, j);
            const double en = corner_coefficient(eta, i, j + 1);
            const double es = corner_coefficient(eta, i, j);
            out.u(i, j) = (ee * (u(i + 1, j) - u(i, j)) - ew * (u(i, j) - u(i - 1, j))) * r1 +
                          (en * (u(i, j + 1) - u(i, j)) - es * (u(i, j) - u(i, j - 1))) * r2;
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!targeted(mask.v_face(i, j), target)) continue;
            const auto& v = f.v;
            const double en = eta(i, j);
            const double es = eta(i, j - 1);
            const double ee = corner_coefficient(eta, i + 1, j);
            const double ew = corner_coefficient(eta, i, j);
            out.v(i, j) = (ee * (v(i + 1, j) - v(i, j)) - ew * (v(i, j) - v(i - 1, j))) * r1 +
                          (en * (v(i, j + 1) - v(i, j)) - es * (v(i, j) - v(i, j - 1))) * r2;
        }
    return out;
}

FaceFields apply_bc(FaceFields f, const CellMask& mask, WallCondition kind) {
    require_classified(mask);
    const auto& g = mask.grid;
    const double s = kind == WallCondition::kNoSlip ? -1.0 : 1.0;

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const FaceClass c = mask.u_face(i, j);
            if (c == FaceClass::kInterface || c == FaceClass::kOuter) f.u(i, j) = 0.0;
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const FaceClass c = mask.v_face(i, j);
            if (c == FaceClass::kInterface || c == FaceClass::kOuter) f.v(i, j) = 0.0;
        }

    // Solid faces adjacent (tangentially) to fluid faces act as ghosts.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            if (mask.u_face(i, j) != FaceClass::kSolid) continue;
            double sum = 0.0;
            int cnt = 0;
            for (int dj : {-1, 1}) {
                const int jj = j + dj;
                if (jj < 0 || jj >= g.ny || mask.u_face(i, jj) != FaceClass::kFluid) continue;
                sum += f.u(i, jj);
                ++cnt;
            }
            if (cnt > 0) f.u(i, j) = s * sum / cnt;
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (mask.v_face(i, j) != FaceClass::kSolid) continue;
            double sum = 0.0;
            int cnt = 0;
            for (int di : {-1, 1}) {
                const int ii = i + di;
                if (ii < 0 || ii >= g.nx || mask.v_face(ii, j) != FaceClass::kFluid) continue;
                sum += f.v(ii, j);
                ++cnt;
            }
            if (cnt > 0) f.v(i, j) = s * sum / cnt;
        }

    // Off-domain ghost rows and columns.
    for (int i = 0; i <= g.nx; ++i) {
        f.u(i, -1) = s * f.u(i, 0);
        f.u(i, g.ny) = s * f.u(i, g.ny - 1);
    }
    for (int j = -1; j <= g.ny; ++j) {
        f.u(-1, j) = -f.u(1, j);
        f.u(g.nx + 1, j) = -f.u(g.nx - 1, j);
    }
    for (int j = 0; j <= g.ny; ++j) {
        f.v(-1, j) = s * f.v(0, j);
        f.v(g.nx, j) = s * f.v(g.nx - 1, j);
    }
    for (int i = -1; i <= g.nx; ++i) {
        f.v(i, -1) = -f.v(i, 1);
        f.v(i, g.ny + 1) = -f.v(i, g.ny - 1);
    }
    return f;
}

}  // namespace muskat
