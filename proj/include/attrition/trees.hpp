#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "attrition/matrix.hpp"

namespace attrition {

/// Depth-1 decision rule: go left iff x[feature] <= threshold, vote the
/// side's class. polarity is the +/-1 orientation used for margin scores
/// (+1 when the right side votes class 1). A degenerate stump has no usable
/// split and votes one class everywhere.
struct Stump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = +1;
    int vote_left = 0;
    int vote_right = 1;
    bool degenerate = false;
};

struct StumpFit {
    Stump stump;
    double weighted_error = 0.0;
};

/// Weighted 0-1-error-minimizing stump over every (feature, midpoint
/// threshold, polarity) candidate. Weights must be non-negative and sum to 1
/// within 1e-9. Ties break toward the lowest feature index, then the lowest
/// threshold. The returned error never exceeds 0.5 (orientation flip).
StumpFit train_stump(const Matrix& X, const std::vector<int>& y, std::span<const double> w);

int stump_predict(const Stump& stump, std::span<const double> x);

/// +/-1 margin vote of a stump, polarity-consistent with stump_predict.
inline int stump_sign(const Stump& stump, std::span<const double> x) {
    return 2 * stump_predict(stump, x) - 1;
}

/// How many features a CART split may consider.
struct FeatureSubset {
    enum class Mode { all, sqrt_count, fixed };
    Mode mode = Mode::all;
    std::size_t count = 0;

    static FeatureSubset all() { return {}; }
    static FeatureSubset sqrt_count() { return {Mode::sqrt_count, 0}; }
    static FeatureSubset fixed(std::size_t k) { return {Mode::fixed, k}; }
    std::size_t resolve(std::size_t d) const;
};

struct CartParams {
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_samples_leaf = 1;
    FeatureSubset features_per_split = FeatureSubset::all();
    std::uint64_t seed = 0;
};

/// Tree stored as a flat node array; index 0 is the root. Internal nodes
/// carry the split, leaves carry the majority label and the class-weight
/// distribution behind it.
struct TreeNode {
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = npos;
    std::size_t right = npos;
    int label = 0;
    std::array<double, 2> class_weight = {0.0, 0.0};

    bool is_leaf() const { return left == npos; }
};

struct Tree {
    std::vector<TreeNode> nodes;
    std::size_t n_features = 0;
};

/// Gini impurity of a two-class weight pair; 0 iff pure, at most 0.5.
double gini(double weight0, double weight1);

/// Recursive weighted-Gini CART. Pass an empty weight span for uniform
/// weights. Splits are midpoints between consecutive distinct values; a node
/// becomes a leaf when it is pure, at max_depth, too small to honor
/// min_samples_leaf, or when no split strictly reduces weighted impurity.
/// With a restricted FeatureSubset each split draws its candidate features
/// from the params seed, so training is deterministic.
Tree train_cart(const Matrix& X, const std::vector<int>& y, std::span<const double> w,
                const CartParams& params);

/// Deterministic descent; x[feature] <= threshold routes left (values exactly
/// at a threshold always go left). Throws on dimension mismatch.
int tree_predict(const Tree& tree, std::span<const double> x);

}  // namespace attrition
