#pragma once

/**
 * @file snapshot_io.hpp
 * @brief Field snapshots as CSV (one row per cell) and legacy ASCII VTK
 * (STRUCTURED_POINTS, one SCALARS block per field).
 *
 * Both carry cell-centered rho, p and the face velocities averaged to centers.
 * Numbers use the shortest decimal form that reads back to the same double.
 */

#include <string>

#include "muskat/grid.hpp"
#include "muskat/scenario.hpp"

namespace muskat {

/// Cell-centered view of a snapshot; this is what the files contain.
struct SnapshotData {
    StaggeredGrid grid;
    double time{0.0};
    Field rho;
    Field p;
    Field u_center;
    Field v_center;

    friend bool operator==(const SnapshotData&, const SnapshotData&) = default;
};

SnapshotData center_view(const Snapshot& s);

enum class SnapshotFileFormat { kCsv, kVtkLegacy };

std::string snapshot_to_csv(const SnapshotData& s);
std::string snapshot_to_vtk(const SnapshotData& s);
SnapshotData snapshot_from_csv(const std::string& text);
SnapshotData snapshot_from_vtk(const std::string& text);

/// Throws std::runtime_error when the path cannot be written.
void write_snapshot(const Snapshot& s, const std::string& path, SnapshotFileFormat format);
SnapshotData read_snapshot(const std::string& path, SnapshotFileFormat format);

/// Binary-mode whole-file write and read shared by all writers.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace muskat
