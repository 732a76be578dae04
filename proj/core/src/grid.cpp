#include "muskat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace muskat {

const char* to_string(Staggering s) {
    switch (s) {
        case Staggering::kCenter: return "center";
        case Staggering::kUFace: return "u-face";
        case Staggering::kVFace: return "v-face";
    }
    return "?";
}

std::vector<double> Field::interior_values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(ni_) * static_cast<std::size_t>(nj_));
    for (int j = 0; j < nj_; ++j)
        for (int i = 0; i < ni_; ++i) out.push_back((*this)(i, j));
    return out;
}

void Field::set_interior_values(std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(ni_) * static_cast<std::size_t>(nj_))
        throw std::invalid_argument("field: interior size mismatch");
    std::size_t k = 0;
    for (int j = 0; j < nj_; ++j)
        for (int i = 0; i < ni_; ++i) (*this)(i, j) = values[k++];
}

void Field::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

double Field::max_abs_interior() const {
    double m = 0.0;
    for (int j = 0; j < nj_; ++j)
        for (int i = 0; i < ni_; ++i) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

double FaceFields::max_abs() const { return std::max(u.max_abs_interior(), v.max_abs_interior()); }

void require_staggering(const Field& f, Staggering expected, const char* what) {
    if (f.staggering() != expected)
        throw std::invalid_argument(std::string("staggering mismatch: ") + what + " expects " + to_string(expected) +
                                    ", got " + to_string(f.staggering()));
}

}  // namespace muskat
