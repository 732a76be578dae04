#include "muskat/snapshot_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "muskat/config_io.hpp"

namespace muskat {

namespace {

const char* const kFieldNames[] = {"rho", "p", "u_center", "v_center"};

double parse_number(std::string_view s) {
    double x = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::runtime_error("snapshot: malformed number '" + std::string(s) + "'");
    return x;
}

int parse_int(std::string_view s) {
    int x = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::runtime_error("snapshot: malformed integer '" + std::string(s) + "'");
    return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t b = 0;
    for (;;) {
        const auto e = s.find(sep, b);
        out.push_back(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
        if (e == std::string_view::npos) return out;
        b = e + 1;
    }
}

// Value of "key=value" within a header line.
std::string header_value(const std::string& line, const std::string& key) {
    const auto k = line.find(key + "=");
    if (k == std::string::npos) throw std::runtime_error("snapshot: header lacks '" + key + "'");
    const auto b = k + key.size() + 1;
    const auto e = line.find(' ', b);
    return line.substr(b, e == std::string::npos ? std::string::npos : e - b);
}

const Field& field_of(const SnapshotData& s, int k) {
    switch (k) {
        case 0: return s.rho;
        case 1: return s.p;
        case 2: return s.u_center;
        default: return s.v_center;
    }
}

Field& field_of(SnapshotData& s, int k) { return const_cast<Field&>(field_of(const_cast<const SnapshotData&>(s), k)); }

void allocate(SnapshotData& s) {
    s.rho = Field(s.grid, Staggering::kCenter);
    s.p = Field(s.grid, Staggering::kCenter);
    s.u_center = Field(s.grid, Staggering::kCenter);
    s.v_center = Field(s.grid, Staggering::kCenter);
}

}  // namespace

SnapshotData center_view(const Snapshot& s) {
    SnapshotData d;
    d.grid = s.rho.grid();
    d.time = s.time;
    allocate(d);
    d.rho.set_interior_values(s.rho.interior_values());
    d.p.set_interior_values(s.p.interior_values());
    for (int j = 0; j < d.grid.ny; ++j)
        for (int i = 0; i < d.grid.nx; ++i) {
            d.u_center(i, j) = 0.5 * (s.velocity.u(i, j) + s.velocity.u(i + 1, j));
            d.v_center(i, j) = 0.5 * (s.velocity.v(i, j) + s.velocity.v(i, j + 1));
        }
    return d;
}

std::string snapshot_to_csv(const SnapshotData& s) {
    const auto& g = s.grid;
    std::string out;
    out += "# muskat snapshot\n";
    out += "# nx=" + std::to_string(g.nx) + " ny=" + std::to_string(g.ny) + " h1=" + format_double(g.h1) +
           " h2=" + format_double(g.h2) + "\n";
    out += "# time=" + format_double(s.time) + "\n";
    out += "# fields=rho,p,u_center,v_center\n";
    out += "# gravity=+x2 (x2 increases downward, row j=0 is the top)\n";
    out += "i,j,x1,x2,rho,p,u_center,v_center\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(g.x1_center(i)) + ',' +
                   format_double(g.x2_center(j));
            for (int k = 0; k < 4; ++k) out += ',' + format_double(field_of(s, k)(i, j));
            out += '\n';
        }
    return out;
}

SnapshotData snapshot_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SnapshotData s;
    bool have_dims = false;
    bool have_time = false;
    long long rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("nx=") != std::string::npos) {
                s.grid.nx = parse_int(header_value(line, "nx"));
                s.grid.ny = parse_int(header_value(line, "ny"));
                s.grid.h1 = parse_number(header_value(line, "h1"));
                s.grid.h2 = parse_number(header_value(line, "h2"));
                have_dims = true;
            } else if (line.find("time=") != std::string::npos) {
                s.time = parse_number(header_value(line, "time"));
                have_time = true;
            }
            continue;
        }
        if (line.rfind("i,j,", 0) == 0) {
            if (!have_dims || !have_time) throw std::runtime_error("snapshot: CSV header incomplete");
            allocate(s);
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 8) throw std::runtime_error("snapshot: CSV row with " + std::to_string(cols.size()) + " columns");
        const int i = parse_int(cols[0]);
        const int j = parse_int(cols[1]);
        if (i < 0 || i >= s.grid.nx || j < 0 || j >= s.grid.ny) throw std::runtime_error("snapshot: CSV cell index out of range");
        for (int k = 0; k < 4; ++k) field_of(s, k)(i, j) = parse_number(cols[static_cast<std::size_t>(4 + k)]);
        ++rows;
    }
    if (!have_dims) throw std::runtime_error("snapshot: CSV header incomplete");
    if (rows != static_cast<long long>(s.grid.nx) * s.grid.ny)
        throw std::runtime_error("snapshot: CSV has " + std::to_string(rows) + " rows, expected nx*ny");
    return s;
}

std::string snapshot_to_vtk(const SnapshotData& s) {
    const auto& g = s.grid;
    std::string out;
    out += "# vtk DataFile Version 3.0\n";
    out += "muskat snapshot time=" + format_double(s.time) + " gravity=+x2\n";
    out += "ASCII\n";
    out += "DATASET STRUCTURED_POINTS\n";
    out += "DIMENSIONS " + std::to_string(g.nx) + " " + std::to_string(g.ny) + " 1\n";
    out += "ORIGIN " + format_double(0.5 * g.h1) + " " + format_double(0.5 * g.h2) + " 0\n";
    out += "SPACING " + format_double(g.h1) + " " + format_double(g.h2) + " 1\n";
    out += "POINT_DATA " + std::to_string(g.nx * g.ny) + "\n";
    for (int k = 0; k < 4; ++k) {
        out += std::string("SCALARS ") + kFieldNames[k] + " double 1\nLOOKUP_TABLE default\n";
        const Field& f = field_of(s, k);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out += format_double(f(i, j)) + "\n";
    }
    return out;
}

SnapshotData snapshot_from_vtk(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SnapshotData s;
    std::getline(in, line);
    if (line.rfind("# vtk DataFile", 0) != 0) throw std::runtime_error("snapshot: not a legacy VTK file");
    std::getline(in, line);
    s.time = parse_number(header_value(line, "time"));
    std::string tok;
    while (in >> tok) {
        if (tok == "DIMENSIONS") {
            int nz = 0;
            in >> s.grid.nx >> s.grid.ny >> nz;
        } else if (tok == "SPACING") {
            std::string a, b, c;
            in >> a >> b >> c;
            s.grid.h1 = parse_number(a);
            s.grid.h2 = parse_number(b);
        } else if (tok == "POINT_DATA") {
            int n = 0;
            in >> n;
            allocate(s);
        } else if (tok == "SCALARS") {
            std::string name, type, comps, lt, def;
            in >> name >> type >> comps >> lt >> def;
            int k = -1;
            for (int q = 0; q < 4; ++q)
                if (name == kFieldNames[q]) k = q;
            if (k < 0) throw std::runtime_error("snapshot: unknown VTK field '" + name + "'");
            Field& f = field_of(s, k);
            for (int j = 0; j < s.grid.ny; ++j)
                for (int i = 0; i < s.grid.nx; ++i) {
                    std::string v;
                    if (!(in >> v)) throw std::runtime_error("snapshot: truncated VTK data");
                    f(i, j) = parse_number(v);
                }
        }
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_snapshot(const Snapshot& s, const std::string& path, SnapshotFileFormat format) {
    const SnapshotData d = center_view(s);
    write_text_file(path, format == SnapshotFileFormat::kCsv ? snapshot_to_csv(d) : snapshot_to_vtk(d));
}

SnapshotData read_snapshot(const std::string& path, SnapshotFileFormat format) {
    const std::string text = read_text_file(path);
    return format == SnapshotFileFormat::kCsv ? snapshot_from_csv(text) : snapshot_from_vtk(text);
}

}  // namespace muskat
