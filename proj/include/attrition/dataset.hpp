#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attrition/csv.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

enum class EncodePolicy { integer_codes, one_hot };

/// Per-feature metadata carried through encoding. `categories` is the number
/// of admissible values for ordinal/nominal code columns (0 for numeric and
/// one-hot indicator columns).
struct FeatureInfo {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::size_t categories = 0;
};

/// Encoded numeric view of the raw table: feature matrix, binary labels
/// (1 = attrition yes), and the provenance needed to reproduce the encoding.
struct Dataset {
    Matrix features;
    std::vector<std::string> feature_names;
    std::vector<FeatureInfo> feature_info;
    std::vector<int> labels;
    std::string label_name = "label";
    std::vector<std::string> dropped;
    EncodePolicy policy = EncodePolicy::integer_codes;

    std::size_t n_rows() const { return features.rows; }
    std::size_t n_features() const { return features.cols; }
    std::size_t feature_index(const std::string& name) const;  // throws if absent
    std::size_t count_label(int value) const;

    /// Feature column by name, or the 0/1 labels when `name` is the label
    /// column. Lets analytics address attrition like any other axis.
    std::vector<double> column(const std::string& name) const;
    bool is_label(const std::string& name) const { return name == label_name; }
};

/// Encode a raw table against its schema. Columns in `drop` are removed, the
/// label column becomes `labels` (admissible values: Yes/No), ordinal cells
/// map to their 0-based level index, nominal cells map to integer category
/// codes or one-hot indicators depending on policy, numeric cells are parsed
/// as reals. Errors name the offending 1-based row and the column.
Dataset encode(const RawTable& table, const std::vector<ColumnSpec>& schema,
               const std::vector<std::string>& drop,
               EncodePolicy policy = EncodePolicy::integer_codes);

struct SplitSpec {
    double test_fraction = 0.30;
    std::uint64_t seed = 0;
    bool stratified = false;
};

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// Disjoint, exhaustive train/test partition. Test size is
/// round(n * test_fraction); identical (data, spec) pairs give identical
/// partitions on every platform. Stratified splits apportion the test side
/// per class by largest remainder, which keeps each class within one
/// instance of its overall proportion.
Split split(const Dataset& data, const SplitSpec& spec);

/// Dataset restricted to `indices` (in the given order).
Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices);

}  // namespace attrition
