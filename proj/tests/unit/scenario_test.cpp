#include "muskat/scenario.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

namespace muskat {
namespace {

ScenarioConfig small_config(Mode mode) {
    ScenarioConfig c;
    c.mode = mode;
    c.geometry = mode == Mode::kRigid ? GeometryKind::kCapillaries : GeometryKind::kDisjointSquares;
    c.n = 2;
    c.cells_per_period = 8;
    c.interface_perturbation = 1.0 / 16;
    c.perturbation_wavenumber = 2;
    c.t_end = 400;
    c.snapshot_times = {0, 100, 250, 400};
    return c;
}

TEST(ScenarioConfig, ValidateRejectsBadFields) {
    ScenarioConfig c = small_config(Mode::kRigid);
    EXPECT_NO_THROW(c.validate());
    c.porosity = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_config(Mode::kRigid);
    c.snapshot_times = {100, 50};
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_config(Mode::kRigid);
    c.snapshot_times = {500};
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_config(Mode::kRigid);
    c.rho_minus = -1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_config(Mode::kRigid);
    c.cells_per_period = 2;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(ScenarioConfig, ScheduleDefaultsToEndTime) {
    ScenarioConfig c;
    c.t_end = 12;
    EXPECT_EQ(c.schedule(), std::vector<double>{12});
}

TEST(RunScenario, SnapshotsAtRequestedTimesExactly) {
    for (Mode m : {Mode::kRigid, Mode::kElastic}) {
        const auto r = run_scenario(small_config(m));
        ASSERT_EQ(r.metrics.snapshots.size(), 4u);
        ASSERT_EQ(r.snapshots.size(), 4u);
        const std::vector<double> t{0, 100, 250, 400};
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_EQ(r.metrics.snapshots[k].time, t[k]);
            EXPECT_EQ(r.snapshots[k].time, t[k]);
            EXPECT_LE(r.metrics.snapshots[k].div_max, 1e-6);
        }
        EXPECT_EQ(r.metrics.summary.status, "ok");
        EXPECT_LE(r.metrics.summary.mass_drift, 1e-12 * std::max<long long>(1, r.metrics.summary.steps));
        EXPECT_EQ(r.metrics.summary.mode, to_string(m));
    }
}

TEST(RunScenario, ZeroEndTimeGivesOneSharpSnapshot) {
    ScenarioConfig c = small_config(Mode::kRigid);
    c.t_end = 0;
    c.snapshot_times.clear();
    const auto r = run_scenario(c);
    ASSERT_EQ(r.metrics.snapshots.size(), 1u);
    EXPECT_LE(r.metrics.snapshots[0].mixing_zone_width, 2 * c.grid().h2);
    EXPECT_EQ(r.metrics.summary.steps, 0);
}

TEST(RunScenario, EqualDensitiesDoNotMove) {
    for (Mode m : {Mode::kRigid, Mode::kElastic}) {
        ScenarioConfig c = small_config(m);
        c.rho_plus = c.rho_minus = 800.0;
        const auto r = run_scenario(c);
        const double h0 = r.metrics.snapshots.front().interface_mean_height;
        for (const auto& s : r.metrics.snapshots) {
            EXPECT_NEAR(s.interface_mean_height, h0, c.grid().h2);
            EXPECT_EQ(s.mixing_zone_width, 0.0);
        }
    }
}

TEST(RunScenario, Deterministic) {
    const auto c = small_config(Mode::kElastic);
    const auto a = run_scenario(c);
    const auto b = run_scenario(c);
    EXPECT_EQ(a.metrics, b.metrics);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        EXPECT_EQ(a.snapshots[k].rho, b.snapshots[k].rho);
        EXPECT_EQ(a.snapshots[k].p, b.snapshots[k].p);
        EXPECT_EQ(a.snapshots[k].velocity, b.snapshots[k].velocity);
    }
}

TEST(RunScenario, SinkSeesEverySnapshot) {
    std::vector<double> seen;
    (void)run_scenario(small_config(Mode::kRigid), [&](const Snapshot& s, const SnapshotMetrics& m) {
        EXPECT_EQ(s.time, m.time);
        seen.push_back(s.time);
    });
    EXPECT_EQ(seen, (std::vector<double>{0, 100, 250, 400}));
}

TEST(RunScenario, SolverFailureCarriesPartialMetrics) {
    ScenarioConfig c = small_config(Mode::kRigid);
    c.solver.max_iters = 1;
    c.solver.div_tol = 1e-300;
    c.solver.div_rel_tol = 1e-300;
    try {
        (void)run_scenario(c);
        FAIL() << "expected ScenarioError";
    } catch (const ScenarioError& e) {
        EXPECT_EQ(e.metrics().summary.status, "failed");
        EXPECT_FALSE(e.metrics().summary.message.empty());
    }
}

TEST(EpsilonSweep, SingleEntryMatchesRun) {
    const auto c = small_config(Mode::kRigid);
    const auto rep = epsilon_sweep(c, {2});
    ASSERT_EQ(rep.entries.size(), 1u);
    EXPECT_TRUE(rep.entries[0].ok);
    EXPECT_EQ(rep.entries[0].metrics, run_scenario(c).metrics);
}

TEST(EpsilonSweep, OrderedByListAndFailuresRecorded) {
    ScenarioConfig c = small_config(Mode::kRigid);
    c.rho_plus = c.rho_minus = 800.0;
    std::atomic<int> calls{0};
    const auto runner = [&](const ScenarioConfig& cfg) {
        ++calls;
        if (cfg.n == 3) throw SolverError("synthetic", 1.0);
        return run_scenario(cfg);
    };
    const auto rep = epsilon_sweep(c, {4, 3, 1, 2}, 3, runner);
    EXPECT_EQ(calls.load(), 4);
    ASSERT_EQ(rep.entries.size(), 4u);
    EXPECT_EQ(rep.entries[0].n, 4);
    EXPECT_EQ(rep.entries[1].n, 3);
    EXPECT_FALSE(rep.entries[1].ok);
    EXPECT_NE(rep.entries[1].error.find("synthetic"), std::string::npos);
    for (std::size_t k : {0u, 2u, 3u}) {
        EXPECT_TRUE(rep.entries[k].ok);
        const auto& s = rep.entries[k].metrics.snapshots;
        for (const auto& m : s) EXPECT_NEAR(m.interface_mean_height, s.front().interface_mean_height, 1e-9);
    }
}

TEST(CompareModes, IdenticalInputsGiveFalseVerdicts) {
    const auto m = run_scenario(small_config(Mode::kRigid)).metrics;
    const auto rep = compare_modes(m, m);
    EXPECT_FALSE(rep.rigid_wider);
    EXPECT_FALSE(rep.elastic_displaced_less);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.rigid_width, row.elastic_width);
        EXPECT_EQ(row.rigid_displacement, row.elastic_displacement);
    }
}

TEST(CompareModes, MismatchedSchedulesRejected) {
    RunMetrics a;
    RunMetrics b;
    a.snapshots.resize(2);
    b.snapshots.resize(1);
    EXPECT_THROW(compare_modes(a, b), std::invalid_argument);
    b.snapshots.resize(2);
    b.snapshots[1].time = 5.0;
    EXPECT_THROW(compare_modes(a, b), std::invalid_argument);
}

TEST(CompareModes, VerdictsFollowFinalRow) {
    RunMetrics r;
    RunMetrics e;
    r.snapshots.resize(1);
    e.snapshots.resize(1);
    r.snapshots[0].mixing_zone_width = 0.5;
    e.snapshots[0].mixing_zone_width = 0.1;
    r.snapshots[0].interface_displacement = 0.2;
    e.snapshots[0].interface_displacement = 1e-6;
    const auto rep = compare_modes(r, e);
    EXPECT_TRUE(rep.rigid_wider);
    EXPECT_TRUE(rep.elastic_displaced_less);
}

}  // namespace
}  // namespace muskat
