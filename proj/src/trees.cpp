#include "attrition/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "attrition/rng.hpp"

namespace attrition {

namespace {

void check_training_input(const Matrix& X, const std::vector<int>& y) {
    if (X.rows == 0 || X.cols == 0) throw std::runtime_error("trees: empty training matrix");
    if (X.rows != y.size())
        throw std::runtime_error("trees: label count does not match row count");
    for (int label : y)
        if (label != 0 && label != 1)
            throw std::runtime_error("trees: labels must be 0 or 1");
}

}  // namespace

StumpFit train_stump(const Matrix& X, const std::vector<int>& y, std::span<const double> w) {
    check_training_input(X, y);
    const std::size_t n = X.rows;
    if (w.size() != n) throw std::runtime_error("trees: weight count does not match row count");
    double total0 = 0.0, total1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < 0.0) throw std::runtime_error("trees: negative sample weight");
        (y[i] == 1 ? total1 : total0) += w[i];
    }
    if (std::abs(total0 + total1 - 1.0) > 1e-9)
        throw std::runtime_error("trees: stump weights must sum to 1");

    StumpFit best;
    double best_error = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> order(n);
    for (std::size_t f = 0; f < X.cols; ++f) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double va = X.at(a, f), vb = X.at(b, f);
            return va < vb || (va == vb && a < b);
        });
        // Sweep midpoints between consecutive distinct values, tracking the
        // class weight to the left. For orientation left->0/right->1 the
        // error is the class-1 weight on the left plus the class-0 weight on
        // the right; the flipped orientation mirrors it.
        double left0 = 0.0, left1 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t idx = order[i];
            (y[idx] == 1 ? left1 : left0) += w[idx];
            double v = X.at(idx, f);
            double v_next = X.at(order[i + 1], f);
            if (v == v_next) continue;
            double threshold = v + (v_next - v) / 2.0;
            double error_pos = left1 + (total0 - left0);  // left->0, right->1
            double error_neg = left0 + (total1 - left1);  // left->1, right->0
            if (error_pos < best_error) {
                best_error = error_pos;
                best.stump = {f, threshold, +1, 0, 1, false};
            }
            if (error_neg < best_error) {
                best_error = error_neg;
                best.stump = {f, threshold, -1, 1, 0, false};
            }
        }
    }

    if (!std::isfinite(best_error)) {
        // Every feature is constant: fall back to a constant majority vote.
        int majority = total1 > total0 ? 1 : 0;
        best.stump = {0, 0.0, majority == 1 ? +1 : -1, majority, majority, true};
        best_error = std::min(total0, total1);
    }
    best.weighted_error = best_error;
    return best;
}

int stump_predict(const Stump& stump, std::span<const double> x) {
    if (stump.feature >= x.size())
        throw std::runtime_error("trees: input row has too few features for this stump");
    return x[stump.feature] <= stump.threshold ? stump.vote_left : stump.vote_right;
}

std::size_t FeatureSubset::resolve(std::size_t d) const {
    switch (mode) {
        case Mode::all:
            return d;
        case Mode::sqrt_count:
            return std::max<std::size_t>(1, static_cast<std::size_t>(
                                                std::sqrt(static_cast<double>(d))));
        case Mode::fixed:
            if (count == 0 || count > d)
                throw std::runtime_error("trees: features_per_split must lie in [1, " +
                                         std::to_string(d) + "]");
            return count;
    }
    return d;
}

double gini(double weight0, double weight1) {
    double total = weight0 + weight1;
    if (total <= 0.0) return 0.0;
    double p0 = weight0 / total, p1 = weight1 / total;
    return 1.0 - (p0 * p0 + p1 * p1);
}

namespace {

struct NodeTask {
    std::size_t node;
    std::vector<std::size_t> samples;
    std::size_t depth;
};

struct BestSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double child_impurity = 0.0;  // weighted sum over both children
};

BestSplit find_split(const Matrix& X, const std::vector<int>& y, const std::vector<double>& w,
                     const std::vector<std::size_t>& samples,
                     const std::vector<std::size_t>& features, std::size_t min_leaf) {
    double total0 = 0.0, total1 = 0.0;
    for (std::size_t idx : samples) (y[idx] == 1 ? total1 : total0) += w[idx];

    BestSplit best;
    std::vector<std::size_t> order;
    for (std::size_t f : features) {
        order = samples;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double va = X.at(a, f), vb = X.at(b, f);
            return va < vb || (va == vb && a < b);
        });
        double left0 = 0.0, left1 = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            std::size_t idx = order[i];
            (y[idx] == 1 ? left1 : left0) += w[idx];
            double v = X.at(idx, f);
            double v_next = X.at(order[i + 1], f);
            if (v == v_next) continue;
            std::size_t count_left = i + 1;
            if (count_left < min_leaf || order.size() - count_left < min_leaf) continue;
            double right0 = total0 - left0, right1 = total1 - left1;
            double impurity = (left0 + left1) * gini(left0, left1) +
                              (right0 + right1) * gini(right0, right1);
            if (!best.found || impurity < best.child_impurity - 1e-15) {
                best.found = true;
                best.feature = f;
                best.threshold = v + (v_next - v) / 2.0;
                best.child_impurity = impurity;
            }
        }
    }
    // Demand a strict impurity decrease; an equal-impurity split is noise.
    if (best.found) {
        double parent = (total0 + total1) * gini(total0, total1);
        if (!(parent - best.child_impurity > 1e-12)) best.found = false;
    }
    return best;
}

}  // namespace

Tree train_cart(const Matrix& X, const std::vector<int>& y, std::span<const double> w,
                const CartParams& params) {
    check_training_input(X, y);
    if (params.min_samples_leaf == 0)
        throw std::runtime_error("trees: min_samples_leaf must be at least 1");
    const std::size_t n = X.rows;
    const std::size_t d = X.cols;
    const std::size_t per_split = params.features_per_split.resolve(d);

    // Normalize weights once so impurity thresholds are scale-free.
    std::vector<double> weights(n);
    if (w.empty()) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(n));
    } else {
        if (w.size() != n) throw std::runtime_error("trees: weight count does not match row count");
        double sum = 0.0;
        for (double v : w) {
            if (v < 0.0) throw std::runtime_error("trees: negative sample weight");
            sum += v;
        }
        if (sum <= 0.0) throw std::runtime_error("trees: weights sum to zero");
        for (std::size_t i = 0; i < n; ++i) weights[i] = w[i] / sum;
    }

    Rng rng(params.seed);
    Tree tree;
    tree.n_features = d;
    tree.nodes.emplace_back();

    std::vector<std::size_t> all_features(d);
    for (std::size_t i = 0; i < d; ++i) all_features[i] = i;

    std::vector<NodeTask> stack;
    {
        std::vector<std::size_t> root(n);
        for (std::size_t i = 0; i < n; ++i) root[i] = i;
        stack.push_back({0, std::move(root), 0});
    }

    while (!stack.empty()) {
        NodeTask task = std::move(stack.back());
        stack.pop_back();

        double w0 = 0.0, w1 = 0.0;
        for (std::size_t idx : task.samples) (y[idx] == 1 ? w1 : w0) += weights[idx];
        TreeNode& node = tree.nodes[task.node];
        node.class_weight = {w0, w1};
        node.label = w1 > w0 ? 1 : 0;

        bool pure = w0 == 0.0 || w1 == 0.0;
        bool depth_capped = params.max_depth > 0 && task.depth >= params.max_depth;
        bool too_small = task.samples.size() < 2 * params.min_samples_leaf;
        if (pure || depth_capped || too_small) continue;

        const std::vector<std::size_t>& features =
            per_split < d ? rng.sample_without_replacement(d, per_split) : all_features;
        BestSplit split = find_split(X, y, weights, task.samples, features,
                                     params.min_samples_leaf);
        if (!split.found) continue;

        std::vector<std::size_t> left, right;
        for (std::size_t idx : task.samples)
            (X.at(idx, split.feature) <= split.threshold ? left : right).push_back(idx);

        std::size_t left_index = tree.nodes.size();
        tree.nodes.emplace_back();
        std::size_t right_index = tree.nodes.size();
        tree.nodes.emplace_back();
        TreeNode& parent = tree.nodes[task.node];  // re-fetch, vector may have grown
        parent.feature = split.feature;
        parent.threshold = split.threshold;
        parent.left = left_index;
        parent.right = right_index;
        stack.push_back({right_index, std::move(right), task.depth + 1});
        stack.push_back({left_index, std::move(left), task.depth + 1});
    }
    return tree;
}

int tree_predict(const Tree& tree, std::span<const double> x) {
    if (x.size() != tree.n_features)
        throw std::runtime_error("trees: input row has " + std::to_string(x.size()) +
                                 " features, tree expects " + std::to_string(tree.n_features));
    std::size_t at = 0;
    while (!tree.nodes[at].is_leaf())
        at = x[tree.nodes[at].feature] <= tree.nodes[at].threshold ? tree.nodes[at].left
                                                                   : tree.nodes[at].right;
    return tree.nodes[at].label;
}

}  // namespace attrition
