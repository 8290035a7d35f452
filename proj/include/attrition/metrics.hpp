#pragma once

#include <cstddef>
#include <vector>

namespace attrition {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
};

struct AccuracyResult {
    double value = 0.0;
    ConfusionMatrix confusion;
};

/// Exact fraction of matching entries plus the confusion counts. Class 1 is
/// the positive class. Labels must be 0 or 1 and the lists non-empty.
AccuracyResult accuracy(const std::vector<int>& predictions, const std::vector<int>& truth);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Threshold sweep: points[k] is the (FP/N, TP/P) rate pair when everything
/// scoring >= thresholds[k] is called positive. thresholds[0] is +infinity,
/// so the curve starts at (0,0); the last threshold is the minimum score, so
/// it ends at (1,1). Tied scores collapse into a single step.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

/// Throws when truth holds a single class (the curve is undefined).
RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& truth);

/// Trapezoidal area under the curve. Equals the pairwise ranking statistic
/// P(score_pos > score_neg) + 0.5 * P(tie).
double auc(const RocCurve& curve);

}  // namespace attrition
