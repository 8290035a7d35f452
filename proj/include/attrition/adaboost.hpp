#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "attrition/dataset.hpp"
#include "attrition/matrix.hpp"
#include "attrition/trees.hpp"

namespace attrition {

struct AdaBoostParams {
    std::size_t n_estimators = 1000;
    double learning_rate = 0.1;
    std::uint64_t seed = 0;
};

/// Stage-wise additive ensemble of decision stumps. stumps and alphas are
/// parallel; alphas are the raw stage weights (not normalized).
struct AdaBoostModel {
    std::vector<Stump> stumps;
    std::vector<double> alphas;
    AdaBoostParams params;
    std::size_t n_features = 0;
};

/// Boosting loop: each round fits the best stump under the current sample
/// weights, then multiplies the weight of every misclassified sample by
/// exp(alpha) and renormalizes. A round with weighted error >= 0.5 discards
/// that stump and stops; a perfect round keeps its stump and stops.
AdaBoostModel train_adaboost(const Matrix& X, const std::vector<int>& y,
                             const AdaBoostParams& params);
AdaBoostModel train_adaboost(const Dataset& data, const AdaBoostParams& params);

/// Normalized margin sum(alpha_t * sign_t(x)) / sum(alpha_t) in [-1, 1];
/// 0 for an empty model.
double adaboost_score(const AdaBoostModel& model, std::span<const double> x);

/// Class 1 iff the score is strictly positive.
int adaboost_predict(const AdaBoostModel& model, std::span<const double> x);

}  // namespace attrition
