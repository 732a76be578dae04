#pragma once

/**
 * @file saddle.hpp
 * @brief Discrete Stokes-type saddle problem on the staggered grid:
 *
 *     -div(eta grad u) + grad p = f   on unknown faces
 *                        div u = 0   on unknown cells
 *
 * Each face has a role that decides how it enters the momentum stencil, and each
 * cell is either an unknown pressure cell or carries a given pressure. The pressure
 * is found by an artificial-compressibility iteration on the pressure Schur
 * complement S = D A^{-1} D^T, where every sweep calls an inner velocity solve.
 */

#include <cstdint>
#include <memory>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

enum class FaceRole : std::uint8_t {
    kUnknown,  // solved for
    kFixed,    // value taken from SaddleProblem::fixed
    kReflect,  // ghost equals minus the neighbour being assembled (no-slip wall)
    kMirror,   // ghost equals the neighbour plus a mirror source (stress-free or traction)
};

enum class CellRole : std::uint8_t { kUnknown, kFixed };

enum class InnerSolver { kDirect, kJacobi };
enum class PressureIteration { kConjugateGradient, kCompressibilityRamp };

struct SaddleOptions {
    InnerSolver inner{InnerSolver::kDirect};
    PressureIteration method{PressureIteration::kConjugateGradient};
    double div_tol{1e-6};       // absolute bound on max |div u|
    double div_rel_tol{1e-10};  // target max |div u| <= div_rel_tol * max|u| / h
    int max_iters{400};         // pressure sweeps
    double relax_tol{1e-12};    // Jacobi: relative residual
    int relax_max_iters{100000};
    double relax_omega{0.8};
    double c_p{1.0};  // ramp: initial artificial sound speed
    double c_p_growth{1.5};
    double c_p_max{1e6};

    friend bool operator==(const SaddleOptions&, const SaddleOptions&) = default;
};

struct SaddleStats {
    int outer_iters{0};
    long long inner_iters{0};
    double div_max{0.0};
    double c_p_final{0.0};
    bool met_relative{false};
};

/// Input of one saddle solve. Field arrays are read only where their role asks.
struct SaddleProblem {
    StaggeredGrid grid;
    std::vector<FaceRole> u_role;   // (nx+1) x ny
    std::vector<FaceRole> v_role;   // nx x (ny+1)
    std::vector<CellRole> cell_role;
    Field eta;                  // cell coefficient
    FaceFields fixed;           // kFixed values; also the value of non-unknown faces in the divergence
    FaceFields mirror_normal;      // kMirror ghost offset when reached along the component direction
    FaceFields mirror_tangential;  // kMirror ghost offset when reached across the component direction
    FaceFields force;           // momentum source at unknown faces
    Field pressure;             // given pressure in kFixed cells
    FaceFields face_pressure;   // optional per-face override of a kFixed neighbour cell's pressure (NaN = unused)

    explicit SaddleProblem(const StaggeredGrid& g);

    FaceRole& u_at(int i, int j) { return u_role[static_cast<std::size_t>(i + j * (grid.nx + 1))]; }
    FaceRole& v_at(int i, int j) { return v_role[static_cast<std::size_t>(i + j * grid.nx)]; }
    CellRole& cell_at(int i, int j) { return cell_role[static_cast<std::size_t>(i + j * grid.nx)]; }
    [[nodiscard]] FaceRole u_at(int i, int j) const { return u_role[static_cast<std::size_t>(i + j * (grid.nx + 1))]; }
    [[nodiscard]] FaceRole v_at(int i, int j) const { return v_role[static_cast<std::size_t>(i + j * grid.nx)]; }
    [[nodiscard]] CellRole cell_at(int i, int j) const { return cell_role[static_cast<std::size_t>(i + j * grid.nx)]; }
};

struct SaddleResult {
    FaceFields u;
    Field p;
    SaddleStats stats;
};

/// Assembled system, reusable for several right-hand sides with the same roles and eta.
class SaddleSystem {
public:
    SaddleSystem(const SaddleProblem& problem, const SaddleOptions& options);
    ~SaddleSystem();
    SaddleSystem(SaddleSystem&&) noexcept;
    SaddleSystem& operator=(SaddleSystem&&) noexcept;

    /// Velocity for a given pressure (cells with kUnknown role read from p).
    [[nodiscard]] FaceFields solve_velocity(const Field& p) const;

    /// Full pressure-velocity iteration starting from p_init (may be null).
    /// Throws SolverError when max |div u| stays above div_tol.
    [[nodiscard]] SaddleResult solve(const Field* p_init) const;

    /// Pressure unknowns split into connected components; floating ones have no
    /// pressure reference and are gauged to zero mean.
    [[nodiscard]] int floating_components() const;

    [[nodiscard]] long long inner_iterations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Field pressure_template_;
};

SaddleResult solve_saddle(const SaddleProblem& problem, const SaddleOptions& options, const Field* p_init = nullptr);

}  // namespace muskat
