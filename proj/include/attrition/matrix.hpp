#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace attrition {

/// Dense row-major matrix of doubles. Rows are instances, columns are features.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(values.data() + r * cols, cols);
    }

    bool operator==(const Matrix&) const = default;
};

/// Copy of the r-th row as an owning vector.
inline std::vector<double> row_vector(const Matrix& m, std::size_t r) {
    auto s = m.row(r);
    return std::vector<double>(s.begin(), s.end());
}

}  // namespace attrition
