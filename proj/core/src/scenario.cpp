#include "muskat/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "muskat/diagnostics.hpp"
#include "muskat/elastic_solver.hpp"
#include "muskat/rigid_solver.hpp"
#include "muskat/transport.hpp"

namespace muskat {

const char* to_string(Mode m) { return m == Mode::kRigid ? "rigid" : "elastic"; }

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

void ScenarioConfig::validate() const {
    require(n >= 1, "geometry.n must be >= 1");
    require(cells_per_period >= (geometry == GeometryKind::kAllFluid ? 1 : 4),
            "geometry.cells_per_period must be >= 4");
    if (geometry != GeometryKind::kAllFluid) require(porosity > 0.0 && porosity < 1.0, "geometry.porosity must lie in (0, 1)");
    require(rho_plus > 0.0, "physics.rho_plus must be positive");
    require(rho_minus > 0.0, "physics.rho_minus must be positive");
    require(rho_s > 0.0, "physics.rho_s must be positive");
    require(mu_plus > 0.0, "physics.mu_plus must be positive");
    require(mu_minus > 0.0, "physics.mu_minus must be positive");
    require(lambda0 > 0.0, "physics.lambda0 must be positive");
    require(eps_coef > 0.0, "physics.eps_coef must be positive");
    require(gravity >= 0.0 && std::isfinite(gravity), "physics.gravity must be finite and non-negative");
    require(interface_height > 0.0 && interface_height < 1.0, "physics.interface_height must lie in (0, 1)");
    require(interface_height - std::abs(interface_perturbation) > 0.0 &&
                interface_height + std::abs(interface_perturbation) < 1.0,
            "physics.interface_perturbation moves the interface out of the domain");
    require(perturbation_wavenumber >= 0, "physics.perturbation_wavenumber must be >= 0");
    require(cfl > 0.0 && cfl <= 1.0, "numerics.cfl must lie in (0, 1]");
    require(dt_min > 0.0 && dt_max >= dt_min, "numerics.dt_min must be positive and not above dt_max");
    require(solver.div_tol > 0.0, "numerics.div_tol must be positive");
    require(solver.div_rel_tol >= 0.0, "numerics.div_rel_tol must be non-negative");
    require(solver.max_iters >= 1, "numerics.max_iters must be >= 1");
    require(solver.relax_tol > 0.0, "numerics.relax_tol must be positive");
    require(solver.relax_max_iters >= 1, "numerics.relax_max_iters must be >= 1");
    require(solver.relax_omega > 0.0 && solver.relax_omega <= 1.0, "numerics.relax_omega must lie in (0, 1]");
    require(solver.c_p > 0.0, "numerics.c_p must be positive");
    require(solver.c_p_growth >= 1.0, "numerics.c_p_growth must be >= 1");
    require(solver.c_p_max >= solver.c_p, "numerics.c_p_max must be >= c_p");
    require(mixing_threshold > 0.0 && mixing_threshold < 0.5, "numerics.mixing_threshold must lie in (0, 0.5)");
    require(t_end >= 0.0 && std::isfinite(t_end), "schedule.t_end must be finite and non-negative");
    for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
        require(snapshot_times[k] >= 0.0 && snapshot_times[k] <= t_end, "schedule.snapshot_times must lie in [0, t_end]");
        if (k > 0) require(snapshot_times[k] > snapshot_times[k - 1], "schedule.snapshot_times must be strictly increasing");
    }
    try {
        (void)build_mask(geometry, n, porosity, grid(), porosity_convention);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> ScenarioConfig::schedule() const {
    if (snapshot_times.empty()) return {t_end};
    return snapshot_times;
}

namespace {

struct Recorder {
    const ScenarioConfig& cfg;
    const CellMask& mask;
    TransportScope scope;
    double h0{0.0};
    double mass0{0.0};
    double div_since{0.0};
    long long outer_since{0};
    long long inner_since{0};
    ScenarioResult result;

    SnapshotMetrics record(double t, long long step, const Field& rho, const Field& phase, const Field& p,
                           const FaceFields& v, const SnapshotSink& sink) {
        SnapshotMetrics m;
        m.time = t;
        m.step = step;
        m.mixing_zone_width = mixing_zone_width(rho, mask, cfg.rho_plus, cfg.rho_minus, cfg.mixing_threshold);
        m.interface_mean_height = interface_mean_height(phase, mask);
        m.interface_displacement = std::abs(m.interface_mean_height - h0);
        const auto vol = phase_volumes(rho, mask, cfg.rho_plus, cfg.rho_minus);
        m.volume_plus = vol.plus;
        m.volume_minus = vol.minus;
        m.volume_mixed = vol.mixed;
        m.total_mass = total_mass(rho, mask, scope);
        const auto [lo, hi] = fluid_extrema(rho, mask);
        m.rho_min = lo;
        m.rho_max = hi;
        m.div_max = div_since;
        m.outer_iters = outer_since;
        m.inner_iters = inner_since;
        div_since = 0.0;
        outer_since = 0;
        inner_since = 0;
        result.metrics.snapshots.push_back(m);
        Snapshot s{t, rho, p, v};
        if (sink) sink(s, m);
        result.snapshots.push_back(std::move(s));
        return m;
    }
};

SaddleOptions solver_options(const ScenarioConfig& cfg) { return cfg.solver; }

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const SnapshotSink& sink) {
    cfg.validate();
    const StaggeredGrid grid = cfg.grid();
    const CellMask mask = build_mask(cfg.geometry, cfg.n, cfg.porosity, grid, cfg.porosity_convention);
    const bool elastic = cfg.mode == Mode::kElastic;

    InitialData init;
    init.rho_plus = cfg.rho_plus;
    init.rho_minus = cfg.rho_minus;
    init.rho_s = cfg.rho_s;
    init.mu_plus = cfg.mu_plus;
    init.mu_minus = cfg.mu_minus;
    init.interface_height = cfg.interface_height;
    init.perturbation = cfg.interface_perturbation;
    init.wavenumber = cfg.perturbation_wavenumber;
    init.include_solid = elastic;
    TransportState ts = init_density(mask, init);
    ts.cfl = cfg.cfl;

    Recorder rec{cfg, mask, ts.scope, interface_mean_height(ts.phase, mask), total_mass(ts.rho, mask, ts.scope), 0.0, 0, 0, {}};
    auto& summary = rec.result.metrics.summary;
    summary.mode = to_string(cfg.mode);
    summary.delta = cfg.rho_plus / cfg.rho_minus;
    summary.initial_mass = rec.mass0;

    const std::vector<double> times = cfg.schedule();
    std::size_t next = 0;
    long long step = 0;

    auto finish = [&](const Field& rho) {
        summary.steps = step;
        summary.final_mass = total_mass(rho, mask, rec.scope);
        summary.mass_drift = rec.mass0 != 0.0 ? std::abs(summary.final_mass - rec.mass0) / std::abs(rec.mass0) : 0.0;
    };

    try {
        if (!elastic) {
            StokesParams sp;
            sp.mu1 = cfg.mu_plus;
            sp.eps = cfg.eps_coef;
            sp.gravity = cfg.gravity;
            sp.solver = solver_options(cfg);
            Field p(grid, Staggering::kCenter);
            for (;;) {
                StokesResult sol = stationary_stokes_solve(ts.rho, mask, sp, &p, &ts.mu);
                p = sol.p;
                rec.div_since = std::max(rec.div_since, sol.diag.div_max);
                rec.outer_since += sol.diag.outer_iters;
                rec.inner_since += sol.diag.inner_iters;
                summary.max_div = std::max(summary.max_div, sol.diag.div_max);
                while (next < times.size() && ts.t == times[next]) {
                    rec.record(ts.t, step, ts.rho, ts.phase, p, sol.v, sink);
                    ++next;
                }
                if (next >= times.size()) break;
                const double target = times[next];
                double dt = choose_dt(sol.v, grid, cfg.cfl, cfg.dt_min, cfg.dt_max);
                const bool clipped = ts.t + dt >= target;
                if (clipped) dt = target - ts.t;
                ts.dt = dt;
                ts = upwind_step(std::move(ts), sol.v, mask);
                if (clipped) ts.t = target;
                ++step;
            }
        } else {
            ElasticParams ep;
            ep.lambda0 = cfg.lambda0;
            ep.mu0 = cfg.mu_plus;
            ep.rho_s = cfg.rho_s;
            ep.gravity = cfg.gravity;
            ep.solver = solver_options(cfg);
            ep.cfl = cfg.cfl;
            CoupledState cs = make_coupled_state(mask, std::move(ts));
            for (;;) {
                while (next < times.size() && cs.transport.t == times[next]) {
                    rec.record(cs.transport.t, step, cs.transport.rho, cs.transport.phase, cs.p, cs.velocity, sink);
                    ++next;
                }
                if (next >= times.size()) break;
                const double target = times[next];
                double dt = choose_dt(cs.velocity, grid, cfg.cfl, cfg.dt_min, cfg.dt_max);
                bool clipped = cs.transport.t + dt >= target;
                if (clipped) dt = target - cs.transport.t;
                cs = coupled_step(std::move(cs), dt, mask, ep);
                if (cs.diag.dt != dt) clipped = false;
                if (clipped) cs.transport.t = target;
                ++step;
                rec.div_since = std::max(rec.div_since, cs.diag.div_max);
                rec.outer_since += cs.diag.outer_iters;
                rec.inner_since += cs.diag.inner_iters;
                summary.max_div = std::max({summary.max_div, cs.diag.div_max, cs.diag.lame_div_max});
                summary.max_traction_residual = std::max(summary.max_traction_residual, cs.diag.traction_residual);
                summary.max_continuity = std::max(summary.max_continuity, cs.diag.continuity);
            }
            ts = std::move(cs.transport);
        }
    } catch (const SolverError& e) {
        summary.status = "failed";
        summary.message = e.what();
        summary.steps = step;
        throw ScenarioError(e, rec.result.metrics);
    }
    finish(rec.result.snapshots.empty() ? ts.rho : rec.result.snapshots.back().rho);
    return std::move(rec.result);
}

SweepReport epsilon_sweep(const ScenarioConfig& base, const std::vector<int>& n_list, int max_threads,
                          const ScenarioRunner& runner) {
    SweepReport report;
    report.entries.resize(n_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n_list.size()) return;
            SweepEntry& e = report.entries[k];
            e.n = n_list[k];
            ScenarioConfig cfg = base;
            cfg.n = n_list[k];
            try {
                ScenarioResult r = runner ? runner(cfg) : run_scenario(cfg);
                e.metrics = std::move(r.metrics);
                e.ok = true;
            } catch (const ScenarioError& err) {
                e.error = err.what();
                e.metrics = err.metrics();
            } catch (const std::exception& err) {
                e.error = err.what();
            }
        }
    };
    const int threads = std::clamp(max_threads, 1, std::max(1, static_cast<int>(n_list.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

ComparisonReport compare_modes(const RunMetrics& rigid, const RunMetrics& elastic) {
    if (rigid.snapshots.size() != elastic.snapshots.size())
        throw std::invalid_argument("compare_modes: snapshot schedules differ in length");
    ComparisonReport rep;
    for (std::size_t k = 0; k < rigid.snapshots.size(); ++k) {
        const auto& a = rigid.snapshots[k];
        const auto& b = elastic.snapshots[k];
        if (a.time != b.time) throw std::invalid_argument("compare_modes: snapshot times differ");
        rep.rows.push_back({a.time, a.mixing_zone_width, b.mixing_zone_width, a.interface_displacement,
                            b.interface_displacement});
    }
    if (!rep.rows.empty()) {
        const auto& last = rep.rows.back();
        rep.rigid_wider = last.rigid_width > last.elastic_width;
        rep.elastic_displaced_less = last.elastic_displacement < last.rigid_displacement;
    }
    return rep;
}

}  // namespace muskat
