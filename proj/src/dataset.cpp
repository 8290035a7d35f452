#include "attrition/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "attrition/rng.hpp"

namespace attrition {

namespace {

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    bool consumed = end != begin;
    if (consumed) {
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        consumed = *end == '\0';
    }
    if (!consumed || !std::isfinite(v))
        throw std::runtime_error("dataset: row " + std::to_string(row + 1) + ", column '" +
                                 column + "': cannot parse '" + cell + "' as a number");
    return v;
}

std::size_t level_code(const ColumnSpec& col, const std::string& cell, std::size_t row) {
    for (std::size_t i = 0; i < col.levels.size(); ++i)
        if (col.levels[i] == cell) return i;
    throw std::runtime_error("dataset: row " + std::to_string(row + 1) + ", column '" +
                             col.name + "': value '" + cell + "' is outside the declared levels");
}

}  // namespace

std::size_t Dataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return i;
    throw std::runtime_error("dataset: unknown feature '" + name + "'");
}

std::size_t Dataset::count_label(int value) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), value));
}

std::vector<double> Dataset::column(const std::string& name) const {
    std::vector<double> out(n_rows());
    if (is_label(name)) {
        for (std::size_t r = 0; r < n_rows(); ++r) out[r] = static_cast<double>(labels[r]);
        return out;
    }
    std::size_t c = feature_index(name);
    for (std::size_t r = 0; r < n_rows(); ++r) out[r] = features.at(r, c);
    return out;
}

Dataset encode(const RawTable& table, const std::vector<ColumnSpec>& schema,
               const std::vector<std::string>& drop, EncodePolicy policy) {
    validate_schema(schema);
    for (const auto& col : schema) table.column_index(col.name);  // presence check
    std::set<std::string> dropped(drop.begin(), drop.end());
    for (const auto& name : dropped) table.column_index(name);

    // Surviving columns keep schema order regardless of file column order.
    const ColumnSpec* label_col = nullptr;
    std::vector<const ColumnSpec*> kept;
    for (const auto& col : schema) {
        if (col.kind == ColumnKind::label) {
            label_col = &col;
            continue;
        }
        if (!dropped.count(col.name)) kept.push_back(&col);
    }
    if (dropped.count(label_col->name))
        throw std::runtime_error("dataset: label column '" + label_col->name +
                                 "' cannot be dropped");
    if (kept.empty()) throw std::runtime_error("dataset: no feature columns survive the drop list");
    if (table.rows.size() < 2)
        throw std::runtime_error("dataset: need at least 2 rows, got " +
                                 std::to_string(table.rows.size()));

    Dataset data;
    data.policy = policy;
    data.label_name = label_col->name;
    data.dropped.assign(drop.begin(), drop.end());
    for (const ColumnSpec* col : kept) {
        if (col->kind == ColumnKind::nominal && policy == EncodePolicy::one_hot) {
            for (const auto& level : col->levels) {
                data.feature_names.push_back(col->name + "=" + level);
                data.feature_info.push_back({data.feature_names.back(), ColumnKind::nominal, 2});
            }
        } else {
            data.feature_names.push_back(col->name);
            std::size_t categories =
                col->kind == ColumnKind::numeric ? 0 : col->levels.size();
            data.feature_info.push_back({col->name, col->kind, categories});
        }
    }

    const std::size_t n = table.rows.size();
    const std::size_t d = data.feature_names.size();
    data.features = Matrix(n, d);
    data.labels.resize(n);

    const std::size_t label_idx = table.column_index(label_col->name);
    std::vector<std::size_t> source;  // table column per kept spec
    for (const ColumnSpec* col : kept) source.push_back(table.column_index(col->name));

    for (std::size_t r = 0; r < n; ++r) {
        const auto& cells = table.rows[r];
        const std::string& label_cell = cells[label_idx];
        if (label_cell == "Yes") {
            data.labels[r] = 1;
        } else if (label_cell == "No") {
            data.labels[r] = 0;
        } else {
            throw std::runtime_error("dataset: row " + std::to_string(r + 1) + ", column '" +
                                     label_col->name + "': label '" + label_cell +
                                     "' is not Yes or No");
        }
        std::size_t out = 0;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const ColumnSpec& col = *kept[k];
            const std::string& cell = cells[source[k]];
            switch (col.kind) {
                case ColumnKind::numeric:
                    data.features.at(r, out++) = parse_number(cell, r, col.name);
                    break;
                case ColumnKind::ordinal:
                    data.features.at(r, out++) = static_cast<double>(level_code(col, cell, r));
                    break;
                case ColumnKind::nominal:
                    if (policy == EncodePolicy::one_hot) {
                        std::size_t code = level_code(col, cell, r);
                        for (std::size_t l = 0; l < col.levels.size(); ++l)
                            data.features.at(r, out++) = l == code ? 1.0 : 0.0;
                    } else {
                        data.features.at(r, out++) = static_cast<double>(level_code(col, cell, r));
                    }
                    break;
                case ColumnKind::label:
                    break;
            }
        }
    }
    return data;
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.feature_names = data.feature_names;
    out.feature_info = data.feature_info;
    out.label_name = data.label_name;
    out.dropped = data.dropped;
    out.policy = data.policy;
    out.features = Matrix(indices.size(), data.n_features());
    out.labels.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        std::size_t r = indices[i];
        if (r >= data.n_rows())
            throw std::runtime_error("dataset: subset index " + std::to_string(r) +
                                     " out of range for " + std::to_string(data.n_rows()) +
                                     " rows");
        std::copy_n(data.features.values.begin() + r * data.n_features(), data.n_features(),
                    out.features.values.begin() + i * data.n_features());
        out.labels[i] = data.labels[r];
    }
    return out;
}

Split split(const Dataset& data, const SplitSpec& spec) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
        throw std::runtime_error("dataset: test_fraction must lie in (0,1), got " +
                                 std::to_string(spec.test_fraction));
    const std::size_t n = data.n_rows();
    const auto n_test =
        static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.test_fraction));
    if (n_test < 1 || n - n_test < 1)
        throw std::runtime_error("dataset: degenerate split, test side " +
                                 std::to_string(n_test) + " of " + std::to_string(n));

    Rng rng(spec.seed);
    std::vector<std::size_t> test_idx;
    if (spec.stratified) {
        // Apportion the test side between classes by largest remainder, so
        // each class stays within one instance of its overall proportion.
        std::vector<std::vector<std::size_t>> by_class(2);
        for (std::size_t i = 0; i < n; ++i) by_class[data.labels[i]].push_back(i);
        double quota0 = static_cast<double>(n_test) * by_class[0].size() / n;
        double quota1 = static_cast<double>(n_test) * by_class[1].size() / n;
        std::size_t k0 = static_cast<std::size_t>(quota0);
        std::size_t k1 = static_cast<std::size_t>(quota1);
        for (std::size_t left = n_test - k0 - k1; left > 0; --left) {
            if (quota0 - static_cast<double>(k0) >= quota1 - static_cast<double>(k1))
                ++k0;
            else
                ++k1;
        }
        rng.shuffle(by_class[0]);
        rng.shuffle(by_class[1]);
        test_idx.assign(by_class[0].begin(), by_class[0].begin() + k0);
        test_idx.insert(test_idx.end(), by_class[1].begin(), by_class[1].begin() + k1);
    } else {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        rng.shuffle(perm);
        test_idx.assign(perm.begin(), perm.begin() + n_test);
    }
    std::sort(test_idx.begin(), test_idx.end());

    Split result;
    result.test_indices = test_idx;
    result.train_indices.reserve(n - n_test);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (next < test_idx.size() && test_idx[next] == i)
            ++next;
        else
            result.train_indices.push_back(i);
    }
    result.train = subset(data, result.train_indices);
    result.test = subset(data, result.test_indices);
    return result;
}

}  // namespace attrition
