#pragma once

/**
 * @file grid.hpp
 * @brief Staggered (MAC) grid on the unit square and ghost-padded grid fields.
 *
 * Layout:
 *   - cell centers (i, j), i in [0, nx), j in [0, ny): pressure, density
 *   - u-faces (i, j), i in [0, nx], j in [0, ny): x1-component at x1 = i*h1
 *   - v-faces (i, j), i in [0, nx), j in [0, ny]: x2-component at x2 = j*h2
 *
 * The x2 axis points along gravity (downward), so row j = 0 is the top row.
 * Every field carries one ghost layer on each side.
 */

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace muskat {

struct StaggeredGrid {
    int nx{0};
    int ny{0};
    double h1{0.0};
    double h2{0.0};

    static StaggeredGrid unit_square(int nx, int ny) {
        if (nx < 1 || ny < 1) throw std::invalid_argument("grid: cell counts must be positive");
        return StaggeredGrid{nx, ny, 1.0 / nx, 1.0 / ny};
    }

    [[nodiscard]] double x1_center(int i) const { return (i + 0.5) * h1; }
    [[nodiscard]] double x2_center(int j) const { return (j + 0.5) * h2; }
    [[nodiscard]] double x1_face(int i) const { return i * h1; }
    [[nodiscard]] double x2_face(int j) const { return j * h2; }
    [[nodiscard]] double cell_area() const { return h1 * h2; }
    [[nodiscard]] int num_cells() const { return nx * ny; }

    friend bool operator==(const StaggeredGrid&, const StaggeredGrid&) = default;
};

enum class Staggering { kCenter, kUFace, kVFace };

const char* to_string(Staggering s);

/// Interior extent of a field with the given staggering.
inline int extent_i(const StaggeredGrid& g, Staggering s) { return s == Staggering::kUFace ? g.nx + 1 : g.nx; }
inline int extent_j(const StaggeredGrid& g, Staggering s) { return s == Staggering::kVFace ? g.ny + 1 : g.ny; }

/// Real-valued grid function with one ghost layer. Indices run over
/// [-1, ni] x [-1, nj]; the interior is [0, ni) x [0, nj).
class Field {
public:
    Field() = default;
    Field(const StaggeredGrid& grid, Staggering where, double value = 0.0)
        : grid_(grid),
          where_(where),
          ni_(extent_i(grid, where)),
          nj_(extent_j(grid, where)),
          data_(static_cast<std::size_t>(ni_ + 2) * static_cast<std::size_t>(nj_ + 2), value) {}

    [[nodiscard]] const StaggeredGrid& grid() const { return grid_; }
    [[nodiscard]] Staggering staggering() const { return where_; }
    [[nodiscard]] int ni() const { return ni_; }
    [[nodiscard]] int nj() const { return nj_; }

    double& operator()(int i, int j) { return data_[offset(i, j)]; }
    double operator()(int i, int j) const { return data_[offset(i, j)]; }

    [[nodiscard]] bool in_interior(int i, int j) const { return i >= 0 && i < ni_ && j >= 0 && j < nj_; }

    /// Raw storage including ghosts.
    [[nodiscard]] std::span<const double> storage() const { return data_; }
    std::span<double> storage() { return data_; }

    /// Interior values copied out in row-major order (i fastest).
    [[nodiscard]] std::vector<double> interior_values() const;
    void set_interior_values(std::span<const double> values);

    void fill(double value);
    [[nodiscard]] double max_abs_interior() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    [[nodiscard]] std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i + 1) + static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(ni_ + 2);
    }

    StaggeredGrid grid_{};
    Staggering where_{Staggering::kCenter};
    int ni_{0};
    int nj_{0};
    std::vector<double> data_;
};

/// A staggered vector field: x1-component on u-faces, x2-component on v-faces.
struct FaceFields {
    Field u;
    Field v;

    FaceFields() = default;
    explicit FaceFields(const StaggeredGrid& grid, double value = 0.0)
        : u(grid, Staggering::kUFace, value), v(grid, Staggering::kVFace, value) {}

    [[nodiscard]] double max_abs() const;

    friend bool operator==(const FaceFields&, const FaceFields&) = default;
};

inline Field make_center_field(const StaggeredGrid& g, double value = 0.0) { return Field(g, Staggering::kCenter, value); }

void require_staggering(const Field& f, Staggering expected, const char* what);

}  // namespace muskat
