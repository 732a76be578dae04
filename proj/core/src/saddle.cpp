#include "muskat/saddle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "muskat/errors.hpp"
#include "muskat/grid_ops.hpp"

namespace muskat {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SaddleProblem::SaddleProblem(const StaggeredGrid& g)
    : grid(g),
      u_role(static_cast<std::size_t>((g.nx + 1) * g.ny), FaceRole::kFixed),
      v_role(static_cast<std::size_t>(g.nx * (g.ny + 1)), FaceRole::kFixed),
      cell_role(static_cast<std::size_t>(g.nx * g.ny), CellRole::kFixed),
      eta(g, Staggering::kCenter),
      fixed(g),
      mirror_normal(g),
      mirror_tangential(g),
      force(g),
      pressure(g, Staggering::kCenter),
      face_pressure(g, kNaN) {}

struct SaddleSystem::Impl {
    StaggeredGrid grid;
    SaddleOptions opt;
    FaceFields fixed;
    std::vector<int> u_index, v_index;  // face -> unknown index or -1
    std::vector<int> cell_index;        // cell -> pressure unknown or -1
    std::vector<std::pair<int, int>> cell_pos;
    int nf{0};
    int nc{0};
    SpMat A;
    SpMat B;   // nf x nc, A u = b0 + B p
    SpMat D;   // nc x nf, div = D u + c_fixed
    Vec diag;
    Vec b0;
    Vec c_fixed;
    Vec eta_cell;  // preconditioner, per pressure unknown
    std::vector<int> comp;       // per pressure unknown
    std::vector<char> floating;  // per component
    std::vector<int> comp_size;
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
    mutable long long inner_iters{0};

    [[nodiscard]] int uidx(int i, int j) const { return u_index[static_cast<std::size_t>(i + j * (grid.nx + 1))]; }
    [[nodiscard]] int vidx(int i, int j) const { return v_index[static_cast<std::size_t>(i + j * grid.nx)]; }
    [[nodiscard]] int cidx(int i, int j) const {
        if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny) return -1;
        return cell_index[static_cast<std::size_t>(i + j * grid.nx)];
    }

    void assemble(const SaddleProblem& pb);
    Vec apply_inverse(const Vec& rhs) const;
    void project(Vec& x) const;
    [[nodiscard]] double min_h() const { return std::min(grid.h1, grid.h2); }
    FaceFields scatter(const Vec& x) const;
};

void SaddleSystem::Impl::assemble(const SaddleProblem& pb) {
    const auto& g = grid;
    u_index.assign(pb.u_role.size(), -1);
    v_index.assign(pb.v_role.size(), -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            if (pb.u_at(i, j) == FaceRole::kUnknown) u_index[static_cast<std::size_t>(i + j * (g.nx + 1))] = nf++;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (pb.v_at(i, j) == FaceRole::kUnknown) v_index[static_cast<std::size_t>(i + j * g.nx)] = nf++;
    cell_index.assign(pb.cell_role.size(), -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (pb.cell_at(i, j) == CellRole::kUnknown) {
                cell_index[static_cast<std::size_t>(i + j * g.nx)] = nc++;
                cell_pos.emplace_back(i, j);
            }

    std::vector<Triplet> at, bt, dt;
    at.reserve(static_cast<std::size_t>(nf) * 5);
    b0 = Vec::Zero(nf);
    diag = Vec::Zero(nf);

    struct Nb {
        bool is_u;
        int i, j;
        double c;
    };

    auto role_of = [&](bool is_u, int i, int j) -> std::pair<bool, FaceRole> {
        if (is_u) {
            if (i < 0 || i > g.nx || j < 0 || j >= g.ny) return {false, FaceRole::kReflect};
            return {true, pb.u_at(i, j)};
        }
        if (i < 0 || i >= g.nx || j < 0 || j > g.ny) return {false, FaceRole::kReflect};
        return {true, pb.v_at(i, j)};
    };

    // nbs[0..1] lie along the component direction, nbs[2..3] across it.
    auto add_row = [&](int row, bool is_u, int i, int j, const Nb (&nbs)[4], double src, int cell_lo_i,
                       int cell_lo_j, int cell_hi_i, int cell_hi_j, double h) {
        double d = 0.0;
        double rhs = src;
        for (int n = 0; n < 4; ++n) {
            const auto& nb = nbs[n];
            const FaceFields& mirror = n < 2 ? pb.mirror_normal : pb.mirror_tangential;
            d += nb.c;
            auto [inside, role] = role_of(nb.is_u, nb.i, nb.j);
            (void)inside;
            switch (role) {
                case FaceRole::kUnknown: {
                    const int col = nb.is_u ? uidx(nb.i, nb.j) : vidx(nb.i, nb.j);
                    if (nb.c != 0.0) at.emplace_back(row, col, -nb.c);
                    break;
                }
                case FaceRole::kFixed:
                    rhs += nb.c * (nb.is_u ? pb.fixed.u(nb.i, nb.j) : pb.fixed.v(nb.i, nb.j));
                    break;
                case FaceRole::kReflect: d += nb.c; break;
                case FaceRole::kMirror:
                    d -= nb.c;
                    rhs += nb.c * (nb.is_u ? mirror.u(nb.i, nb.j) : mirror.v(nb.i, nb.j));
                    break;
            }
        }
        if (!(d > 0.0))
            throw std::invalid_argument("saddle: momentum row without positive coefficient at " +
                                        std::string(is_u ? "u" : "v") + "(" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        at.emplace_back(row, row, d);
        diag(row) = d;

        // Pressure coupling: A u = f - (p_hi - p_lo)/h.
        const double fp = is_u ? pb.face_pressure.u(i, j) : pb.face_pressure.v(i, j);
        auto cell_pressure = [&](int ci, int cj) {
            if (std::isfinite(fp)) return fp;
            if (ci < 0 || ci >= g.nx || cj < 0 || cj >= g.ny) return 0.0;
            return pb.pressure(ci, cj);
        };
        const int lo = cidx(cell_lo_i, cell_lo_j);
        const int hi = cidx(cell_hi_i, cell_hi_j);
        if (hi >= 0) {
            bt.emplace_back(row, hi, -1.0 / h);
        } else {
            rhs -= cell_pressure(cell_hi_i, cell_hi_j) / h;
        }
        if (lo >= 0) {
            bt.emplace_back(row, lo, 1.0 / h);
        } else {
            rhs += cell_pressure(cell_lo_i, cell_lo_j) / h;
        }
        b0(row) = rhs;
    };

    const double r1 = 1.0 / (g.h1 * g.h1);
    const double r2 = 1.0 / (g.h2 * g.h2);
    const Field& eta = pb.eta;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const int row = uidx(i, j);
            if (row < 0) continue;
            const Nb nbs[4] = {{true, i + 1, j, eta(i, j) * r1},
                               {true, i - 1, j, eta(i - 1, j) * r1},
                               {true, i, j + 1, corner_coefficient(eta, i, j + 1) * r2},
                               {true, i, j - 1, corner_coefficient(eta, i, j) * r2}};
            add_row(row, true, i, j, nbs, pb.force.u(i, j), i - 1, j, i, j, g.h1);
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int row = vidx(i, j);
            if (row < 0) continue;
            const Nb nbs[4] = {{false, i, j + 1, eta(i, j) * r2},
                               {false, i, j - 1, eta(i, j - 1) * r2},
                               {false, i + 1, j, corner_coefficient(eta, i + 1, j) * r1},
                               {false, i - 1, j, corner_coefficient(eta, i, j) * r1}};
            add_row(row, false, i, j, nbs, pb.force.v(i, j), i, j - 1, i, j, g.h2);
        }

    A.resize(nf, nf);
    A.setFromTriplets(at.begin(), at.end());
    B.resize(nf, nc);
    B.setFromTriplets(bt.begin(), bt.end());
    D = SpMat(B.transpose());

    // Constant divergence part from non-unknown faces.
    c_fixed = Vec::Zero(nc);
    for (int k = 0; k < nc; ++k) {
        const auto [i, j] = cell_pos[static_cast<std::size_t>(k)];
        auto val_u = [&](int fi) { return uidx(fi, j) >= 0 ? 0.0 : pb.fixed.u(fi, j); };
        auto val_v = [&](int fj) { return vidx(i, fj) >= 0 ? 0.0 : pb.fixed.v(i, fj); };
        c_fixed(k) = (val_u(i + 1) - val_u(i)) / g.h1 + (val_v(j + 1) - val_v(j)) / g.h2;
    }

    eta_cell = Vec::Zero(nc);
    for (int k = 0; k < nc; ++k) {
        const auto [i, j] = cell_pos[static_cast<std::size_t>(k)];
        eta_cell(k) = eta(i, j) > 0.0 ? eta(i, j) : 1.0;
    }

    // Connected components of pressure unknowns through unknown faces.
    comp.assign(static_cast<std::size_t>(nc), -1);
    int ncomp = 0;
    std::vector<int> stack;
    for (int s = 0; s < nc; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        comp[static_cast<std::size_t>(s)] = ncomp;
        stack.push_back(s);
        bool anchored = false;
        int size = 0;
        while (!stack.empty()) {
            const int k = stack.back();
            stack.pop_back();
            ++size;
            const auto [i, j] = cell_pos[static_cast<std::size_t>(k)];
            // faces: west u(i,j), east u(i+1,j), north v(i,j), south v(i,j+1)
            const struct {
                int face;
                int ni, nj;
            } links[4] = {{uidx(i, j), i - 1, j}, {uidx(i + 1, j), i + 1, j}, {vidx(i, j), i, j - 1}, {vidx(i, j + 1), i, j + 1}};
            for (const auto& l : links) {
                if (l.face < 0) continue;
                const int nbk = cidx(l.ni, l.nj);
                if (nbk < 0) {
                    anchored = true;
                    continue;
                }
                if (comp[static_cast<std::size_t>(nbk)] < 0) {
                    comp[static_cast<std::size_t>(nbk)] = ncomp;
                    stack.push_back(nbk);
                }
            }
        }
        floating.push_back(anchored ? 0 : 1);
        comp_size.push_back(size);
        ++ncomp;
    }

    if (opt.inner == InnerSolver::kDirect && nf > 0) {
        ldlt.compute(A);
        if (ldlt.info() != Eigen::Success) throw SolverError("saddle: momentum factorization failed", 0.0);
    }
}

Vec SaddleSystem::Impl::apply_inverse(const Vec& rhs) const {
    if (nf == 0) return Vec::Zero(0);
    if (opt.inner == InnerSolver::kDirect) {
        ++inner_iters;
        return ldlt.solve(rhs);
    }
    // Damped pointwise Jacobi with fixed ordering.
    Vec x = Vec::Zero(nf);
    const double scale = std::max(rhs.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
    Vec r = rhs;
    for (int it = 0; it < opt.relax_max_iters; ++it) {
        const double res = r.lpNorm<Eigen::Infinity>();
        if (res <= opt.relax_tol * scale) return x;
        x.array() += opt.relax_omega * r.array() / diag.array();
        r = rhs - A * x;
        ++inner_iters;
    }
    const double res = r.lpNorm<Eigen::Infinity>() / scale;
    throw SolverError("saddle: Jacobi relaxation did not reach relax_tol", res);
}

void SaddleSystem::Impl::project(Vec& x) const {
    std::vector<double> sum(floating.size(), 0.0);
    for (int k = 0; k < nc; ++k) sum[static_cast<std::size_t>(comp[static_cast<std::size_t>(k)])] += x(k);
    for (int k = 0; k < nc; ++k) {
        const auto c = static_cast<std::size_t>(comp[static_cast<std::size_t>(k)]);
        if (floating[c]) x(k) -= sum[c] / comp_size[c];
    }
}

FaceFields SaddleSystem::Impl::scatter(const Vec& x) const {
    FaceFields out = fixed;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i <= grid.nx; ++i)
            if (const int k = uidx(i, j); k >= 0) out.u(i, j) = x(k);
    for (int j = 0; j <= grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (const int k = vidx(i, j); k >= 0) out.v(i, j) = x(k);
    return out;
}

SaddleSystem::SaddleSystem(const SaddleProblem& problem, const SaddleOptions& options) : impl_(std::make_unique<Impl>()) {
    impl_->grid = problem.grid;
    impl_->opt = options;
    impl_->fixed = problem.fixed;
    // Non-unknown faces report their fixed value; ghosts are not meaningful in the output.
    impl_->assemble(problem);
    pressure_template_ = problem.pressure;
}

SaddleSystem::~SaddleSystem() = default;
SaddleSystem::SaddleSystem(SaddleSystem&&) noexcept = default;
SaddleSystem& SaddleSystem::operator=(SaddleSystem&&) noexcept = default;

int SaddleSystem::floating_components() const {
    int c = 0;
    for (char f : impl_->floating) c += f ? 1 : 0;
    return c;
}

long long SaddleSystem::inner_iterations() const { return impl_->inner_iters; }

FaceFields SaddleSystem::solve_velocity(const Field& p) const {
    const auto& m = *impl_;
    Vec pv(m.nc);
    for (int k = 0; k < m.nc; ++k) {
        const auto [i, j] = m.cell_pos[static_cast<std::size_t>(k)];
        pv(k) = p(i, j);
    }
    return m.scatter(m.apply_inverse(m.b0 + m.B * pv));
}

SaddleResult SaddleSystem::solve(const Field* p_init) const {
    const auto& m = *impl_;
    const auto& opt = m.opt;
    SaddleResult res;
    res.p = pressure_template_;

    Vec p = Vec::Zero(m.nc);
    if (p_init != nullptr) {
        require_staggering(*p_init, Staggering::kCenter, "saddle p_init");
        for (int k = 0; k < m.nc; ++k) {
            const auto [i, j] = m.cell_pos[static_cast<std::size_t>(k)];
            p(k) = (*p_init)(i, j);
        }
    }
    m.project(p);

    const long long inner0 = m.inner_iters;
    Vec u = m.apply_inverse(m.b0 + m.B * p);
    auto div_of = [&](const Vec& x) -> Vec { return m.D * x + m.c_fixed; };
    auto umax_of = [&](const Vec& x) {
        double a = m.fixed.max_abs();
        if (x.size() > 0) a = std::max(a, x.lpNorm<Eigen::Infinity>());
        return a;
    };

    Vec div = div_of(u);
    double dmax = m.nc > 0 ? div.lpNorm<Eigen::Infinity>() : 0.0;
    const double d0 = dmax;
    double cp = opt.c_p;
    int it = 0;
    bool met_rel = false;

    auto converged = [&]() {
        const double rel = opt.div_rel_tol * umax_of(u) / m.min_h();
        met_rel = dmax <= rel;
        if (dmax <= std::min(opt.div_tol, rel)) return true;
        // Reduced to round-off relative to the start: nothing more to gain.
        return dmax <= opt.div_tol && dmax <= 1e-14 * d0;
    };

    if (m.nc > 0 && !converged()) {
        if (opt.method == PressureIteration::kConjugateGradient) {
            Vec r = -div;
            m.project(r);
            Vec z = m.eta_cell.cwiseProduct(r);
            m.project(z);
            Vec d = z;
            double rz = r.dot(z);
            for (it = 1; it <= opt.max_iters; ++it) {
                const Vec w = m.apply_inverse(m.B * d);
                const Vec q = m.D * w;
                const double dq = d.dot(q);
                if (!(dq > 0.0)) break;
                const double alpha = rz / dq;
                p += alpha * d;
                u += alpha * w;
                div = div_of(u);
                dmax = div.lpNorm<Eigen::Infinity>();
                if (converged()) break;
                r = -div;
                m.project(r);
                z = m.eta_cell.cwiseProduct(r);
                m.project(z);
                const double rz_new = r.dot(z);
                d = z + (rz_new / rz) * d;
                rz = rz_new;
            }
        } else {
            for (it = 1; it <= opt.max_iters; ++it) {
                const double dtau = m.min_h() / (2.0 * cp);
                const double omega = std::min(dtau * cp * cp, 1.0);
                p -= omega * m.eta_cell.cwiseProduct(div);
                m.project(p);
                u = m.apply_inverse(m.b0 + m.B * p);
                div = div_of(u);
                dmax = div.lpNorm<Eigen::Infinity>();
                if (converged()) break;
                cp = std::min(cp * opt.c_p_growth, opt.c_p_max);
            }
        }
        if (it > opt.max_iters) it = opt.max_iters;
    }

    res.stats.outer_iters = it;
    res.stats.inner_iters = m.inner_iters - inner0;
    res.stats.div_max = dmax;
    res.stats.c_p_final = cp;
    res.stats.met_relative = met_rel;
    if (!(dmax <= opt.div_tol)) throw SolverError("saddle: divergence above div_tol after pressure iteration", dmax);

    m.project(p);
    for (int k = 0; k < m.nc; ++k) {
        const auto [i, j] = m.cell_pos[static_cast<std::size_t>(k)];
        res.p(i, j) = p(k);
    }
    res.u = m.scatter(u);
    return res;
}

SaddleResult solve_saddle(const SaddleProblem& problem, const SaddleOptions& options, const Field* p_init) {
    return SaddleSystem(problem, options).solve(p_init);
}

}  // namespace muskat
