#include "attrition/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace attrition {

CorrelationMatrix pearson_matrix(const Dataset& data) {
    const std::size_t n = data.n_rows();
    const std::size_t d = data.n_features();
    if (n < 2) throw std::runtime_error("stats: correlation needs at least 2 rows");

    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) mean[c] += data.features.at(r, c);
    for (std::size_t c = 0; c < d; ++c) mean[c] /= static_cast<double>(n);

    // Centered columns, then cross products. Two passes keep the cancellation
    // error of the textbook single-pass form out of the picture.
    Matrix centered(n, d);
    std::vector<double> norm(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            double v = data.features.at(r, c) - mean[c];
            centered.at(r, c) = v;
            norm[c] += v * v;
        }
    }

    CorrelationMatrix out;
    out.feature_names = data.feature_names;
    out.values = Matrix(d, d);
    out.degenerate.assign(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        bool const_i = norm[i] == 0.0;
        for (std::size_t j = i; j < d; ++j) {
            double value = 0.0;
            std::uint8_t degenerate = 0;
            if (const_i || norm[j] == 0.0) {
                degenerate = 1;
            } else if (i == j) {
                value = 1.0;
            } else {
                double dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) dot += centered.at(r, i) * centered.at(r, j);
                value = dot / std::sqrt(norm[i] * norm[j]);
                value = std::clamp(value, -1.0, 1.0);
            }
            out.values.at(i, j) = value;
            out.values.at(j, i) = value;
            out.degenerate[i * d + j] = degenerate;
            out.degenerate[j * d + i] = degenerate;
        }
    }
    return out;
}

BinSpec BinSpec::equal_width(std::size_t n) {
    BinSpec b;
    b.kind = Kind::equal_width;
    b.bins = n;
    return b;
}

BinSpec BinSpec::distinct_values() {
    BinSpec b;
    b.kind = Kind::distinct_values;
    return b;
}

BinSpec BinSpec::explicit_edges(std::vector<double> edges) {
    BinSpec b;
    b.kind = Kind::edges;
    b.edges = std::move(edges);
    return b;
}

BinSpec default_bins(const Dataset& data, const std::string& feature) {
    if (data.is_label(feature)) return BinSpec::distinct_values();
    const FeatureInfo& info = data.feature_info[data.feature_index(feature)];
    if (info.kind == ColumnKind::ordinal || info.kind == ColumnKind::nominal)
        return BinSpec::distinct_values();
    return BinSpec::equal_width(10);
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Axis {
    std::vector<std::string> labels;
    std::vector<double> edges;      // size bins+1 when binned
    std::vector<double> values;     // distinct category values
    std::size_t size = 0;

    std::size_t locate(double v) const {
        if (!values.empty()) {
            // Category axis: nearest declared value (cells hold exact
            // category codes, so this is an exact match in practice).
            std::size_t best = 0;
            double best_dist = std::abs(v - values[0]);
            for (std::size_t i = 1; i < values.size(); ++i) {
                double dist = std::abs(v - values[i]);
                if (dist < best_dist) {
                    best = i;
                    best_dist = dist;
                }
            }
            return best;
        }
        // Out-of-range values clamp to the edge bins.
        if (v <= edges.front()) return 0;
        if (v >= edges.back()) return size - 1;
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        return static_cast<std::size_t>(it - edges.begin()) - 1;
    }
};

Axis build_axis(const std::vector<double>& column, const BinSpec& spec) {
    Axis axis;
    if (spec.kind == BinSpec::Kind::distinct_values) {
        std::set<double> seen(column.begin(), column.end());
        axis.values.assign(seen.begin(), seen.end());
        axis.size = axis.values.size();
        for (double v : axis.values) axis.labels.push_back(format_number(v));
        return axis;
    }
    if (spec.kind == BinSpec::Kind::edges) {
        if (spec.edges.size() < 2 || !std::is_sorted(spec.edges.begin(), spec.edges.end()))
            throw std::runtime_error("stats: bin edges must be ascending with at least 2 entries");
        axis.edges = spec.edges;
    } else {
        if (spec.bins == 0) throw std::runtime_error("stats: bin count must be positive");
        auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
        double lo = *lo_it, hi = *hi_it;
        if (lo == hi) hi = lo + 1.0;  // constant column still gets a usable bin
        axis.edges.resize(spec.bins + 1);
        for (std::size_t i = 0; i <= spec.bins; ++i)
            axis.edges[i] = lo + (hi - lo) * static_cast<double>(i) / spec.bins;
    }
    axis.size = axis.edges.size() - 1;
    for (std::size_t i = 0; i < axis.size; ++i) {
        bool last = i + 1 == axis.size;
        axis.labels.push_back("[" + format_number(axis.edges[i]) + "," +
                              format_number(axis.edges[i + 1]) + (last ? "]" : ")"));
    }
    return axis;
}

}  // namespace

std::uint64_t Histogram2D::total() const {
    std::uint64_t sum = 0;
    for (const auto& row : counts)
        for (std::uint64_t c : row) sum += c;
    return sum;
}

std::pair<std::size_t, std::size_t> Histogram2D::argmax() const {
    std::size_t bi = 0, bj = 0;
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[i].size(); ++j)
            if (counts[i][j] > best) {
                best = counts[i][j];
                bi = i;
                bj = j;
            }
    return {bi, bj};
}

Histogram2D histogram2d(const Dataset& data, const std::string& x, const std::string& y,
                        const BinSpec& x_bins, const BinSpec& y_bins) {
    const std::vector<double> xs = data.column(x);
    const std::vector<double> ys = data.column(y);
    Axis ax = build_axis(xs, x_bins);
    Axis ay = build_axis(ys, y_bins);

    Histogram2D h;
    h.x_feature = x;
    h.y_feature = y;
    h.x_labels = ax.labels;
    h.y_labels = ay.labels;
    h.x_edges = ax.edges;
    h.y_edges = ay.edges;
    h.x_values = ax.values;
    h.y_values = ay.values;
    h.counts.assign(ax.size, std::vector<std::uint64_t>(ay.size, 0));
    for (std::size_t r = 0; r < data.n_rows(); ++r) ++h.counts[ax.locate(xs[r])][ay.locate(ys[r])];
    return h;
}

Histogram2D histogram2d(const Dataset& data, const std::string& x, const std::string& y) {
    return histogram2d(data, x, y, default_bins(data, x), default_bins(data, y));
}

Scatter3D scatter3d(const Dataset& data, const std::string& x, const std::string& y,
                    const std::string& z) {
    const std::vector<double> xs = data.column(x);
    const std::vector<double> ys = data.column(y);
    const std::vector<double> zs = data.column(z);
    Scatter3D s;
    s.axes = {x, y, z};
    s.points.reserve(data.n_rows());
    for (std::size_t r = 0; r < data.n_rows(); ++r) s.points.push_back({xs[r], ys[r], zs[r]});
    s.point_class = data.labels;
    return s;
}

}  // namespace attrition
