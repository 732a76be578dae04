#include "muskat/metrics_io.hpp"

#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "muskat/snapshot_io.hpp"

namespace muskat {

using nlohmann::ordered_json;

namespace {

ordered_json snapshot_json(const SnapshotMetrics& s) {
    ordered_json j;
    j["type"] = "snapshot";
    j["time"] = s.time;
    j["step"] = s.step;
    j["mixing_zone_width"] = s.mixing_zone_width;
    j["interface_mean_height"] = s.interface_mean_height;
    j["interface_displacement"] = s.interface_displacement;
    j["volume_plus"] = s.volume_plus;
    j["volume_minus"] = s.volume_minus;
    j["volume_mixed"] = s.volume_mixed;
    j["total_mass"] = s.total_mass;
    j["rho_min"] = s.rho_min;
    j["rho_max"] = s.rho_max;
    j["div_max"] = s.div_max;
    j["outer_iters"] = s.outer_iters;
    j["inner_iters"] = s.inner_iters;
    return j;
}

SnapshotMetrics snapshot_from(const ordered_json& j) {
    SnapshotMetrics s;
    s.time = j.at("time").get<double>();
    s.step = j.at("step").get<long long>();
    s.mixing_zone_width = j.at("mixing_zone_width").get<double>();
    s.interface_mean_height = j.at("interface_mean_height").get<double>();
    s.interface_displacement = j.at("interface_displacement").get<double>();
    s.volume_plus = j.at("volume_plus").get<double>();
    s.volume_minus = j.at("volume_minus").get<double>();
    s.volume_mixed = j.at("volume_mixed").get<double>();
    s.total_mass = j.at("total_mass").get<double>();
    s.rho_min = j.at("rho_min").get<double>();
    s.rho_max = j.at("rho_max").get<double>();
    s.div_max = j.at("div_max").get<double>();
    s.outer_iters = j.at("outer_iters").get<long long>();
    s.inner_iters = j.at("inner_iters").get<long long>();
    return s;
}

}  // namespace

std::string metrics_to_jsonl(const RunMetrics& m, double div_tol) {
    std::string out;
    for (const auto& s : m.snapshots) out += snapshot_json(s).dump() + "\n";
    const auto& r = m.summary;
    ordered_json j;
    j["type"] = "summary";
    j["mode"] = r.mode;
    j["status"] = r.status;
    j["message"] = r.message;
    j["steps"] = r.steps;
    j["delta"] = r.delta;
    j["initial_mass"] = r.initial_mass;
    j["final_mass"] = r.final_mass;
    j["mass_drift"] = r.mass_drift;
    j["max_div"] = r.max_div;
    j["max_traction_residual"] = r.max_traction_residual;
    j["max_continuity"] = r.max_continuity;
    j["div_ok"] = r.max_div <= div_tol;
    j["mass_ok"] = r.mass_drift <= 1e-8;
    out += j.dump() + "\n";
    return out;
}

RunMetrics metrics_from_jsonl(const std::string& text) {
    RunMetrics m;
    std::istringstream in(text);
    std::string line;
    bool summary = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = ordered_json::parse(line);
        const auto type = j.at("type").get<std::string>();
        if (type == "snapshot") {
            m.snapshots.push_back(snapshot_from(j));
        } else if (type == "summary") {
            auto& r = m.summary;
            r.mode = j.at("mode").get<std::string>();
            r.status = j.at("status").get<std::string>();
            r.message = j.at("message").get<std::string>();
            r.steps = j.at("steps").get<long long>();
            r.delta = j.at("delta").get<double>();
            r.initial_mass = j.at("initial_mass").get<double>();
            r.final_mass = j.at("final_mass").get<double>();
            r.mass_drift = j.at("mass_drift").get<double>();
            r.max_div = j.at("max_div").get<double>();
            r.max_traction_residual = j.at("max_traction_residual").get<double>();
            r.max_continuity = j.at("max_continuity").get<double>();
            summary = true;
        } else {
            throw std::runtime_error("metrics: unknown line type '" + type + "'");
        }
    }
    if (!summary) throw std::runtime_error("metrics: missing summary line");
    return m;
}

void write_metrics(const RunMetrics& m, const std::string& path, double div_tol) {
    write_text_file(path, metrics_to_jsonl(m, div_tol));
}

RunMetrics read_metrics(const std::string& path) { return metrics_from_jsonl(read_text_file(path)); }

std::string comparison_to_json(const ComparisonReport& r) {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json x;
        x["time"] = row.time;
        x["rigid_width"] = row.rigid_width;
        x["elastic_width"] = row.elastic_width;
        x["rigid_displacement"] = row.rigid_displacement;
        x["elastic_displacement"] = row.elastic_displacement;
        j["rows"].push_back(x);
    }
    j["rigid_wider"] = r.rigid_wider;
    j["elastic_displaced_less"] = r.elastic_displaced_less;
    return j.dump(2) + "\n";
}

std::string sweep_to_jsonl(const SweepReport& r) {
    std::string out;
    for (const auto& e : r.entries) {
        ordered_json j;
        j["n"] = e.n;
        j["ok"] = e.ok;
        j["error"] = e.error;
        j["snapshots"] = ordered_json::array();
        for (const auto& s : e.metrics.snapshots) j["snapshots"].push_back(snapshot_json(s));
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace muskat
