#include "muskat/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "muskat/errors.hpp"

namespace muskat {

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key, int line) {
    double x = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    const auto r = std::from_chars(first, last, x);
    if (r.ec != std::errc() || r.ptr != last || !std::isfinite(x))
        throw ConfigError(key + ": expected a finite number, got '" + v + "'", line);
    return x;
}

int to_int(const std::string& v, const std::string& key, int line) {
    int x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw ConfigError(key + ": expected an integer, got '" + v + "'", line);
    return x;
}

void check(bool ok, const std::string& key, const std::string& rule, int line) {
    if (!ok) throw ConfigError(key + " " + rule, line);
}

template <class E>
E to_enum(const std::string& v, const std::string& key, int line, const std::vector<std::pair<std::string, E>>& table) {
    for (const auto& [name, e] : table)
        if (name == v) return e;
    std::string allowed;
    for (const auto& [name, e] : table) allowed += (allowed.empty() ? "" : ", ") + name;
    throw ConfigError(key + ": unknown value '" + v + "' (allowed: " + allowed + ")", line);
}

template <class E>
std::string from_enum(E e, const std::vector<std::pair<std::string, E>>& table) {
    for (const auto& [name, x] : table)
        if (x == e) return name;
    return "?";
}

const std::vector<std::pair<std::string, GeometryKind>> kGeometry = {
    {"capillaries", GeometryKind::kCapillaries}, {"squares", GeometryKind::kDisjointSquares}, {"all_fluid", GeometryKind::kAllFluid}};
const std::vector<std::pair<std::string, PorosityConvention>> kConvention = {
    {"fluid", PorosityConvention::kFluidFraction}, {"solid", PorosityConvention::kSolidFraction}};
const std::vector<std::pair<std::string, Mode>> kMode = {{"rigid", Mode::kRigid}, {"elastic", Mode::kElastic}};
const std::vector<std::pair<std::string, InnerSolver>> kInner = {{"direct", InnerSolver::kDirect}, {"jacobi", InnerSolver::kJacobi}};
const std::vector<std::pair<std::string, PressureIteration>> kPressure = {
    {"cg", PressureIteration::kConjugateGradient}, {"ramp", PressureIteration::kCompressibilityRamp}};
const std::vector<std::pair<std::string, SnapshotFormat>> kFormat = {
    {"none", SnapshotFormat::kNone}, {"csv", SnapshotFormat::kCsv}, {"vtk", SnapshotFormat::kVtk}, {"both", SnapshotFormat::kBoth}};

struct KeySpec {
    std::string name;  // section.key
    bool required;
    std::function<void(ScenarioConfig&, const std::string&, int)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

using C = ScenarioConfig;

KeySpec real(const std::string& name, double C::*field, std::function<bool(double)> ok, std::string rule,
             bool required = false) {
    return {name, required,
            [=](C& c, const std::string& v, int line) {
                const double x = to_double(v, name, line);
                check(ok(x), name, rule, line);
                c.*field = x;
            },
            [=](const C& c) { return format_double(c.*field); }};
}

KeySpec solver_real(const std::string& name, double SaddleOptions::*field, std::function<bool(double)> ok, std::string rule) {
    return {name, false,
            [=](C& c, const std::string& v, int line) {
                const double x = to_double(v, name, line);
                check(ok(x), name, rule, line);
                c.solver.*field = x;
            },
            [=](const C& c) { return format_double(c.solver.*field); }};
}

KeySpec integer(const std::string& name, int C::*field, int min) {
    return {name, false,
            [=](C& c, const std::string& v, int line) {
                const int x = to_int(v, name, line);
                check(x >= min, name, "must be >= " + std::to_string(min), line);
                c.*field = x;
            },
            [=](const C& c) { return std::to_string(c.*field); }};
}

KeySpec solver_integer(const std::string& name, int SaddleOptions::*field, int min) {
    return {name, false,
            [=](C& c, const std::string& v, int line) {
                const int x = to_int(v, name, line);
                check(x >= min, name, "must be >= " + std::to_string(min), line);
                c.solver.*field = x;
            },
            [=](const C& c) { return std::to_string(c.solver.*field); }};
}

const std::vector<KeySpec>& key_table() {
    auto pos = [](double x) { return x > 0.0; };
    auto nonneg = [](double x) { return x >= 0.0; };
    auto unit_open = [](double x) { return x > 0.0 && x < 1.0; };
    static const std::vector<KeySpec> table = {
        {"geometry.kind", true, [](C& c, const std::string& v, int l) { c.geometry = to_enum(v, "geometry.kind", l, kGeometry); },
         [](const C& c) { return from_enum(c.geometry, kGeometry); }},
        integer("geometry.n", &C::n, 1),
        real("geometry.porosity", &C::porosity, unit_open, "must lie in (0, 1)"),
        integer("geometry.cells_per_period", &C::cells_per_period, 1),
        {"geometry.porosity_convention", false,
         [](C& c, const std::string& v, int l) { c.porosity_convention = to_enum(v, "geometry.porosity_convention", l, kConvention); },
         [](const C& c) { return from_enum(c.porosity_convention, kConvention); }},
        {"physics.model", false, [](C& c, const std::string& v, int l) { c.mode = to_enum(v, "physics.model", l, kMode); },
         [](const C& c) { return from_enum(c.mode, kMode); }},
        real("physics.rho_plus", &C::rho_plus, pos, "must be positive", true),
        real("physics.rho_minus", &C::rho_minus, pos, "must be positive", true),
        real("physics.rho_s", &C::rho_s, pos, "must be positive"),
        real("physics.mu_plus", &C::mu_plus, pos, "must be positive"),
        real("physics.mu_minus", &C::mu_minus, pos, "must be positive"),
        real("physics.lambda0", &C::lambda0, pos, "must be positive"),
        real("physics.eps_coef", &C::eps_coef, pos, "must be positive"),
        real("physics.gravity", &C::gravity, nonneg, "must be non-negative"),
        real("physics.interface_height", &C::interface_height, unit_open, "must lie in (0, 1)"),
        real("physics.interface_perturbation", &C::interface_perturbation, [](double x) { return std::abs(x) < 1.0; },
             "must lie in (-1, 1)"),
        integer("physics.perturbation_wavenumber", &C::perturbation_wavenumber, 0),
        real("numerics.cfl", &C::cfl, [](double x) { return x > 0.0 && x <= 1.0; }, "must lie in (0, 1]"),
        real("numerics.dt_min", &C::dt_min, pos, "must be positive"),
        real("numerics.dt_max", &C::dt_max, pos, "must be positive"),
        solver_real("numerics.div_tol", &SaddleOptions::div_tol, pos, "must be positive"),
        solver_real("numerics.div_rel_tol", &SaddleOptions::div_rel_tol, nonneg, "must be non-negative"),
        solver_integer("numerics.max_iters", &SaddleOptions::max_iters, 1),
        solver_real("numerics.relax_tol", &SaddleOptions::relax_tol, pos, "must be positive"),
        solver_integer("numerics.relax_max_iters", &SaddleOptions::relax_max_iters, 1),
        solver_real("numerics.relax_omega", &SaddleOptions::relax_omega, [](double x) { return x > 0.0 && x <= 1.0; },
                    "must lie in (0, 1]"),
        solver_real("numerics.c_p", &SaddleOptions::c_p, pos, "must be positive"),
        solver_real("numerics.c_p_growth", &SaddleOptions::c_p_growth, [](double x) { return x >= 1.0; }, "must be >= 1"),
        solver_real("numerics.c_p_max", &SaddleOptions::c_p_max, pos, "must be positive"),
        {"numerics.inner_solver", false,
         [](C& c, const std::string& v, int l) { c.solver.inner = to_enum(v, "numerics.inner_solver", l, kInner); },
         [](const C& c) { return from_enum(c.solver.inner, kInner); }},
        {"numerics.pressure_iteration", false,
         [](C& c, const std::string& v, int l) { c.solver.method = to_enum(v, "numerics.pressure_iteration", l, kPressure); },
         [](const C& c) { return from_enum(c.solver.method, kPressure); }},
        real("numerics.mixing_threshold", &C::mixing_threshold, [](double x) { return x > 0.0 && x < 0.5; },
             "must lie in (0, 0.5)"),
        real("schedule.t_end", &C::t_end, nonneg, "must be non-negative"),
        {"schedule.snapshot_times", false,
         [](C& c, const std::string& v, int l) {
             c.snapshot_times.clear();
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 item = trim(item);
                 if (item.empty()) continue;
                 const double t = to_double(item, "schedule.snapshot_times", l);
                 check(t >= 0.0, "schedule.snapshot_times", "entries must be non-negative", l);
                 check(c.snapshot_times.empty() || t > c.snapshot_times.back(), "schedule.snapshot_times",
                       "must be strictly increasing", l);
                 c.snapshot_times.push_back(t);
             }
         },
         [](const C& c) {
             std::string s;
             for (double t : c.snapshot_times) s += (s.empty() ? "" : ", ") + format_double(t);
             return s;
         }},
        {"output.directory", false,
         [](C& c, const std::string& v, int l) {
             check(!v.empty(), "output.directory", "must not be empty", l);
             c.output_dir = v;
         },
         [](const C& c) { return c.output_dir; }},
        {"output.snapshot_format", false,
         [](C& c, const std::string& v, int l) { c.snapshot_format = to_enum(v, "output.snapshot_format", l, kFormat); },
         [](const C& c) { return from_enum(c.snapshot_format, kFormat); }},
    };
    return table;
}

const std::set<std::string> kSections = {"geometry", "physics", "numerics", "schedule", "output"};

}  // namespace

ParsedConfig parse_config(const std::string& text) {
    const auto& table = key_table();
    std::map<std::string, const KeySpec*> by_name;
    for (const auto& k : table) by_name[k.name] = &k;

    ParsedConfig out;
    std::map<std::string, int> seen;  // key -> line
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed section header '" + s + "'", line);
            section = trim(s.substr(1, s.size() - 2));
            if (!kSections.count(section)) throw ConfigError("unknown section [" + section + "]", line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + s + "'", line);
        if (section.empty()) throw ConfigError("key outside of any section", line);
        const std::string key = section + "." + trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
        const auto it = by_name.find(key);
        if (it == by_name.end()) throw ConfigError("unknown key '" + key + "'", line);
        if (seen.count(key)) throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")", line);
        seen[key] = line;
        it->second->set(out.config, value, line);
    }
    for (const auto& k : table) {
        if (seen.count(k.name)) continue;
        if (k.required) throw ConfigError("missing required key '" + k.name + "'", line + 1);
        out.defaults_applied.push_back(k.name + " = " + k.get(out.config));
    }
    // Cross-field checks; report at the line of the most specific key involved.
    try {
        out.config.validate();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        int at = 0;
        for (const auto& [key, l] : seen)
            if (msg.rfind(key, 0) == 0) at = l;
        if (at == 0) {
            for (const char* k : {"schedule.snapshot_times", "schedule.t_end", "geometry.cells_per_period", "geometry.n"})
                if (msg.find(k) != std::string::npos && seen.count(k)) at = seen[k];
        }
        throw ConfigError(msg, at);
    }
    return out;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& config) {
    std::string out;
    std::string section;
    for (const auto& k : key_table()) {
        const auto dot = k.name.find('.');
        const std::string sec = k.name.substr(0, dot);
        if (sec != section) {
            out += (section.empty() ? "" : "\n") + std::string("[") + sec + "]\n";
            section = sec;
        }
        out += k.name.substr(dot + 1) + " = " + k.get(config) + "\n";
    }
    return out;
}

}  // namespace muskat
