#include "attrition/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace attrition {

AccuracyResult accuracy(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (predictions.size() != truth.size())
        throw std::runtime_error("eval: prediction and truth lengths differ");
    if (truth.empty()) throw std::runtime_error("eval: cannot score an empty set");

    AccuracyResult result;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if ((predictions[i] != 0 && predictions[i] != 1) || (truth[i] != 0 && truth[i] != 1))
            throw std::runtime_error("eval: labels must be 0 or 1");
        if (truth[i] == 1)
            (predictions[i] == 1 ? result.confusion.tp : result.confusion.fn) += 1;
        else
            (predictions[i] == 0 ? result.confusion.tn : result.confusion.fp) += 1;
    }
    result.value = static_cast<double>(result.confusion.tp + result.confusion.tn) /
                   static_cast<double>(truth.size());
    return result;
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& truth) {
    if (scores.size() != truth.size())
        throw std::runtime_error("eval: score and truth lengths differ");
    if (truth.empty()) throw std::runtime_error("eval: cannot score an empty set");

    std::size_t positives = 0, negatives = 0;
    for (int label : truth) {
        if (label != 0 && label != 1) throw std::runtime_error("eval: labels must be 0 or 1");
        (label == 1 ? positives : negatives) += 1;
    }
    if (positives == 0 || negatives == 0)
        throw std::runtime_error("eval: ROC needs both classes in the truth labels");

    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
    });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());

    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        double threshold = scores[order[i]];
        // Consume the whole tie group so equal scores form one sweep step.
        while (i < order.size() && scores[order[i]] == threshold) {
            (truth[order[i]] == 1 ? tp : fp) += 1;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                                static_cast<double>(tp) / static_cast<double>(positives)});
        curve.thresholds.push_back(threshold);
    }
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i];
        const RocPoint& b = curve.points[i + 1];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

}  // namespace attrition
