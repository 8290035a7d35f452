#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "attrition/dataset.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

/// Pairwise Pearson coefficients. Pairs involving a constant column are
/// undefined; they are flagged in `degenerate` and stored as 0 so exports
/// stay total.
struct CorrelationMatrix {
    Matrix values;
    std::vector<std::string> feature_names;
    std::vector<std::uint8_t> degenerate;  // row-major d*d mask

    bool is_degenerate(std::size_t i, std::size_t j) const {
        return degenerate[i * values.cols + j] != 0;
    }
};

/// Sample Pearson correlation of every feature pair, two-pass mean-centered.
CorrelationMatrix pearson_matrix(const Dataset& data);

/// How one histogram axis is binned.
struct BinSpec {
    enum class Kind { equal_width, distinct_values, edges };
    Kind kind = Kind::equal_width;
    std::size_t bins = 10;
    std::vector<double> edges;  // ascending, for Kind::edges

    static BinSpec equal_width(std::size_t n);
    static BinSpec distinct_values();
    static BinSpec explicit_edges(std::vector<double> edges);
};

/// Default axis binning for a feature: one bin per category for
/// ordinal/nominal columns, 10 equal-width bins for numeric columns.
BinSpec default_bins(const Dataset& data, const std::string& feature);

struct Histogram2D {
    std::string x_feature, y_feature;
    std::vector<std::string> x_labels, y_labels;
    std::vector<double> x_edges, y_edges;  // empty for category axes
    std::vector<double> x_values, y_values;  // category values, empty for binned axes
    std::vector<std::vector<std::uint64_t>> counts;  // [x bin][y bin]

    std::uint64_t total() const;
    std::pair<std::size_t, std::size_t> argmax() const;
};

/// 2D joint counts of two features. Values outside the bin range clamp to
/// the edge bins, so the counts always sum to the dataset size.
Histogram2D histogram2d(const Dataset& data, const std::string& x, const std::string& y,
                        const BinSpec& x_bins, const BinSpec& y_bins);
Histogram2D histogram2d(const Dataset& data, const std::string& x, const std::string& y);

struct Scatter3D {
    std::array<std::string, 3> axes;
    std::vector<std::array<double, 3>> points;  // one per dataset row, row order
    std::vector<int> point_class;               // attrition label per point
};

Scatter3D scatter3d(const Dataset& data, const std::string& x, const std::string& y,
                    const std::string& z);

}  // namespace attrition
