#include "attrition/adaboost.hpp"

#include <cmath>
#include <stdexcept>

namespace attrition {

AdaBoostModel train_adaboost(const Matrix& X, const std::vector<int>& y,
                             const AdaBoostParams& params) {
    if (params.n_estimators == 0)
        throw std::runtime_error("adaboost: n_estimators must be at least 1");
    if (!(params.learning_rate > 0.0))
        throw std::runtime_error("adaboost: learning_rate must be positive");
    const std::size_t n = X.rows;

    AdaBoostModel model;
    model.params = params;
    model.n_features = X.cols;

    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<int> predicted(n);

    for (std::size_t round = 0; round < params.n_estimators; ++round) {
        StumpFit fit = train_stump(X, y, weights);
        double error = fit.weighted_error;
        if (error >= 0.5) break;

        double clamped = std::max(error, 1e-10);
        double alpha = params.learning_rate * 0.5 * std::log((1.0 - clamped) / clamped);
        model.stumps.push_back(fit.stump);
        model.alphas.push_back(alpha);
        if (error == 0.0) break;

        for (std::size_t i = 0; i < n; ++i) predicted[i] = stump_predict(fit.stump, X.row(i));
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (predicted[i] != y[i]) weights[i] *= std::exp(alpha);
            sum += weights[i];
        }
        for (double& wi : weights) wi /= sum;
        double check = 0.0;
        for (double wi : weights) check += wi;
        if (std::abs(check - 1.0) > 1e-9)
            throw std::runtime_error("adaboost: sample weights lost normalization");
    }
    return model;
}

AdaBoostModel train_adaboost(const Dataset& data, const AdaBoostParams& params) {
    return train_adaboost(data.features, data.labels, params);
}

double adaboost_score(const AdaBoostModel& model, std::span<const double> x) {
    if (model.stumps.empty()) return 0.0;
    double weighted = 0.0, total = 0.0;
    for (std::size_t t = 0; t < model.stumps.size(); ++t) {
        weighted += model.alphas[t] * stump_sign(model.stumps[t], x);
        total += model.alphas[t];
    }
    return weighted / total;
}

int adaboost_predict(const AdaBoostModel& model, std::span<const double> x) {
    return adaboost_score(model, x) > 0.0 ? 1 : 0;
}

}  // namespace attrition
