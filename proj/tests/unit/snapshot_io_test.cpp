#include "muskat/snapshot_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "muskat/metrics_io.hpp"
#include "muskat/output.hpp"

namespace muskat {
namespace {

namespace fs = std::filesystem;

SnapshotData sample() {
    const auto g = StaggeredGrid::unit_square(5, 3);
    SnapshotData s{g, 2631.0, Field(g, Staggering::kCenter), Field(g, Staggering::kCenter),
                   Field(g, Staggering::kCenter), Field(g, Staggering::kCenter)};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 5; ++i) {
            s.rho(i, j) = 800.0 + 198.2 * std::sin(i + 3.0 * j);
            s.p(i, j) = -1.0 / (1 + i + j) * 1e-7;
            s.u_center(i, j) = std::ldexp(1.0, -60) * (i - j);
            s.v_center(i, j) = 0.1 * i + 0.2 * j;
        }
    s.p(4, 2) = std::numeric_limits<double>::denorm_min();
    return s;
}

fs::path temp_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("muskat_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

TEST(SnapshotCsv, RoundTripsBitwise) {
    const auto s = sample();
    const auto text = snapshot_to_csv(s);
    EXPECT_EQ(snapshot_from_csv(text), s);
    EXPECT_EQ(snapshot_to_csv(snapshot_from_csv(text)), text);
}

TEST(SnapshotCsv, SelfDescribingHeader) {
    const auto text = snapshot_to_csv(sample());
    EXPECT_NE(text.find("nx=5"), std::string::npos);
    EXPECT_NE(text.find("ny=3"), std::string::npos);
    EXPECT_NE(text.find("time=2631"), std::string::npos);
    EXPECT_NE(text.find("gravity"), std::string::npos);
    EXPECT_NE(text.find("rho,p,u_center,v_center"), std::string::npos);
}

TEST(SnapshotVtk, RoundTripsBitwise) {
    const auto s = sample();
    const auto text = snapshot_to_vtk(s);
    EXPECT_EQ(text.rfind("# vtk DataFile Version", 0), 0u);
    EXPECT_NE(text.find("DIMENSIONS 5 3 1"), std::string::npos);
    EXPECT_EQ(snapshot_from_vtk(text), s);
}

TEST(SnapshotCsv, MalformedInputRejected) {
    EXPECT_THROW(snapshot_from_csv("not a snapshot\n"), std::runtime_error);
    auto text = snapshot_to_csv(sample());
    text.resize(text.size() / 2);
    EXPECT_THROW(snapshot_from_csv(text), std::runtime_error);
}

TEST(SnapshotFiles, WriteAndRead) {
    const auto dir = temp_dir("snapshot_files");
    const auto g = StaggeredGrid::unit_square(4, 4);
    Snapshot snap{12.5, Field(g, Staggering::kCenter, 900.0), Field(g, Staggering::kCenter, -3.0), FaceFields(g, 0.0)};
    snap.velocity.u(2, 1) = 1.0;
    write_snapshot(snap, (dir / "a.csv").string(), SnapshotFileFormat::kCsv);
    write_snapshot(snap, (dir / "a.vtk").string(), SnapshotFileFormat::kVtkLegacy);
    const auto a = read_snapshot((dir / "a.csv").string(), SnapshotFileFormat::kCsv);
    const auto b = read_snapshot((dir / "a.vtk").string(), SnapshotFileFormat::kVtkLegacy);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, center_view(snap));
    EXPECT_DOUBLE_EQ(a.u_center(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(a.u_center(2, 1), 0.5);
    EXPECT_THROW(read_snapshot((dir / "missing.csv").string(), SnapshotFileFormat::kCsv), std::runtime_error);
}

RunMetrics sample_metrics() {
    RunMetrics m;
    for (int k = 0; k < 3; ++k) {
        SnapshotMetrics s;
        s.time = 50.0 * k;
        s.step = 7 * k;
        s.mixing_zone_width = 0.1 * k + 1.0 / 3.0;
        s.interface_mean_height = 0.5;
        s.total_mass = 449.1;
        s.div_max = 1e-13 * k;
        s.outer_iters = 3 * k;
        m.snapshots.push_back(s);
    }
    m.summary.mode = "rigid";
    m.summary.steps = 14;
    m.summary.delta = 998.2 / 800.0;
    m.summary.mass_drift = 1e-15;
    return m;
}

TEST(Metrics, JsonlRoundTrip) {
    const auto m = sample_metrics();
    const auto text = metrics_to_jsonl(m, 1e-6);
    EXPECT_EQ(metrics_from_jsonl(text), m);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_NE(text.find("\"div_ok\":true"), std::string::npos);
    EXPECT_NE(text.find("\"mass_ok\":true"), std::string::npos);
    EXPECT_EQ(metrics_to_jsonl(metrics_from_jsonl(text), 1e-6), text);
}

TEST(Metrics, ComparisonJsonHasVerdicts) {
    const auto m = sample_metrics();
    const auto json = comparison_to_json(compare_modes(m, m));
    EXPECT_NE(json.find("\"rigid_wider\": false"), std::string::npos);
    EXPECT_NE(json.find("\"elastic_displaced_less\": false"), std::string::npos);
}

TEST(RunToDirectory, WritesFilesAndIsDeterministic) {
    ScenarioConfig c;
    c.n = 2;
    c.cells_per_period = 8;
    c.interface_perturbation = 1.0 / 16;
    c.perturbation_wavenumber = 2;
    c.t_end = 200;
    c.snapshot_times = {0, 200};
    c.snapshot_format = SnapshotFormat::kBoth;
    const auto base = temp_dir("run_dir");
    c.output_dir = (base / "a").string();
    (void)run_to_directory(c);
    c.output_dir = (base / "b").string();
    (void)run_to_directory(c);
    for (const char* f : {"metrics.jsonl", "snapshot_000.csv", "snapshot_001.csv", "snapshot_000.vtk",
                          "snapshot_001.vtk"}) {
        ASSERT_TRUE(fs::exists(base / "a" / f)) << f;
        EXPECT_EQ(read_text_file((base / "a" / f).string()), read_text_file((base / "b" / f).string())) << f;
    }
    EXPECT_TRUE(fs::exists(base / "a" / "config.ini"));
    const auto m = read_metrics((base / "a" / "metrics.jsonl").string());
    EXPECT_EQ(m.snapshots.size(), 2u);
}

}  // namespace
}  // namespace muskat
