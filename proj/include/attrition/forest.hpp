#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "attrition/dataset.hpp"
#include "attrition/matrix.hpp"
#include "attrition/trees.hpp"

namespace attrition {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_samples_leaf = 1;
    FeatureSubset features_per_split = FeatureSubset::sqrt_count();
    bool bootstrap = true;  // false trains every tree on the full sample
    std::uint64_t seed = 0;
};

struct ForestModel {
    std::vector<Tree> trees;
    std::vector<std::uint64_t> tree_seeds;
    std::size_t n_features = 0;
};

struct ForestVote {
    int label = 0;
    double score = 0.0;  // fraction of trees voting class 1
};

/// Bagged CART ensemble. Tree t draws its bootstrap resample and its
/// per-split feature subsets from streams derived from mix_seed(seed, t),
/// so any prefix of the forest is reproducible independently of n_trees.
ForestModel train_forest(const Matrix& X, const std::vector<int>& y, const ForestParams& params);
ForestModel train_forest(const Dataset& data, const ForestParams& params);

/// Majority vote across trees; an exact tie votes class 0.
ForestVote forest_predict(const ForestModel& model, std::span<const double> x);

}  // namespace attrition
