#include "attrition/forest.hpp"

#include <algorithm>
#include <stdexcept>

#include "attrition/rng.hpp"

namespace attrition {

ForestModel train_forest(const Matrix& X, const std::vector<int>& y, const ForestParams& params) {
    if (params.n_trees == 0) throw std::runtime_error("forest: n_trees must be at least 1");
    const std::size_t n = X.rows;

    ForestModel model;
    model.n_features = X.cols;
    model.trees.reserve(params.n_trees);
    model.tree_seeds.reserve(params.n_trees);

    Matrix sample;
    std::vector<int> sample_y;
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        std::uint64_t tree_seed = mix_seed(params.seed, t);
        model.tree_seeds.push_back(tree_seed);

        CartParams cart;
        cart.max_depth = params.max_depth;
        cart.min_samples_leaf = params.min_samples_leaf;
        cart.features_per_split = params.features_per_split;
        cart.seed = mix_seed(tree_seed, 1);

        if (params.bootstrap) {
            Rng resample_rng(mix_seed(tree_seed, 0));
            sample = Matrix(n, X.cols);
            sample_y.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t pick = static_cast<std::size_t>(resample_rng.below(n));
                auto src = X.row(pick);
                std::copy(src.begin(), src.end(), sample.values.begin() + i * X.cols);
                sample_y[i] = y[pick];
            }
            model.trees.push_back(train_cart(sample, sample_y, {}, cart));
        } else {
            model.trees.push_back(train_cart(X, y, {}, cart));
        }
    }
    return model;
}

ForestModel train_forest(const Dataset& data, const ForestParams& params) {
    return train_forest(data.features, data.labels, params);
}

ForestVote forest_predict(const ForestModel& model, std::span<const double> x) {
    if (model.trees.empty()) throw std::runtime_error("forest: empty model");
    std::size_t ones = 0;
    for (const Tree& tree : model.trees) ones += tree_predict(tree, x) == 1;
    ForestVote vote;
    vote.score = static_cast<double>(ones) / static_cast<double>(model.trees.size());
    vote.label = vote.score > 0.5 ? 1 : 0;
    return vote;
}

}  // namespace attrition
