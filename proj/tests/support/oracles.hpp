#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "attrition/matrix.hpp"
#include "attrition/trees.hpp"

// Reference implementations the suites compare the library against. Each is
// written for obviousness, not speed: exhaustive enumeration and textbook
// two-pass formulas, sharing no code with the library internals.
namespace oracle {

/// Probability that a random positive outranks a random negative, ties
/// counted half. O(n^2) pair walk.
inline double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw std::runtime_error("oracle: size mismatch");
    double wins = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        ++n_pos;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] == 1) continue;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    for (int label : labels) n_neg += label == 0;
    if (n_pos == 0 || n_neg == 0) throw std::runtime_error("oracle: need both classes");
    return wins / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

/// One ROC point per candidate threshold, predicting positive at
/// score >= threshold. Candidates are +infinity followed by every distinct
/// score in descending order; the curve therefore starts at (0,0) and ends
/// at (1,1).
struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

inline std::vector<RocPoint> roc_by_thresholds(std::span<const double> scores,
                                               std::span<const int> labels) {
    std::vector<double> cuts(scores.begin(), scores.end());
    std::sort(cuts.begin(), cuts.end(), std::greater<>());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.insert(cuts.begin(), std::numeric_limits<double>::infinity());

    double n_pos = 0.0, n_neg = 0.0;
    for (int label : labels) (label == 1 ? n_pos : n_neg) += 1.0;

    std::vector<RocPoint> points;
    for (double cut : cuts) {
        double tp = 0.0, fp = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] < cut) continue;
            (labels[i] == 1 ? tp : fp) += 1.0;
        }
        points.push_back({fp / n_neg, tp / n_pos, cut});
    }
    return points;
}

/// Best stump by full enumeration: features in ascending order, midpoint
/// thresholds in ascending order, left->0/right->1 before its mirror, first
/// strictly better candidate kept. Mirrors the library tie-break so whole
/// stumps can be compared, not just errors.
inline attrition::StumpFit exhaustive_stump(const attrition::Matrix& X,
                                            const std::vector<int>& y,
                                            std::span<const double> w) {
    attrition::StumpFit best;
    double best_error = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < X.cols; ++f) {
        std::vector<double> values;
        for (std::size_t i = 0; i < X.rows; ++i) values.push_back(X.at(i, f));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t v = 0; v + 1 < values.size(); ++v) {
            double threshold = values[v] + (values[v + 1] - values[v]) / 2.0;
            for (int polarity : {+1, -1}) {
                int vote_left = polarity == +1 ? 0 : 1;
                double error = 0.0;
                for (std::size_t i = 0; i < X.rows; ++i) {
                    int predicted =
                        X.at(i, f) <= threshold ? vote_left : 1 - vote_left;
                    if (predicted != y[i]) error += w[i];
                }
                if (error < best_error) {
                    best_error = error;
                    best.stump = {f, threshold, polarity, vote_left, 1 - vote_left, false};
                }
            }
        }
    }
    if (!std::isfinite(best_error)) {
        double total1 = 0.0, total = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) {
            total += w[i];
            if (y[i] == 1) total1 += w[i];
        }
        int majority = total1 > total - total1 ? 1 : 0;
        best.stump = {0, 0.0, majority == 1 ? +1 : -1, majority, majority, true};
        best_error = std::min(total1, total - total1);
    }
    best.weighted_error = best_error;
    return best;
}

/// Textbook two-pass Pearson correlation: means first, then centered
/// products.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw std::runtime_error("oracle: bad input");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(xs.size());
    mean_y /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        syy += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Soft-margin dual objective W(a) = sum a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij.
inline double dual_objective(const std::vector<std::vector<double>>& K,
                             std::span<const int> y, std::span<const double> alpha) {
    double value = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        value += alpha[i];
        for (std::size_t j = 0; j < alpha.size(); ++j)
            value -= 0.5 * alpha[i] * alpha[j] * y[i] * y[j] * K[i][j];
    }
    return value;
}

/// Maximizes the dual on the feasible box by a zooming grid: the first n-1
/// coordinates range over a per-level grid, the last is pinned by the
/// equality constraint sum a_i y_i = 0, and each level re-centers a shrunken
/// window on the incumbent. Concavity of the dual makes the zoom safe for
/// the small n this is meant for (n <= 6).
inline double grid_dual_max(const std::vector<std::vector<double>>& K, std::span<const int> y,
                            double C, std::size_t levels = 8, std::size_t steps = 9) {
    const std::size_t n = y.size();
    if (n < 2) throw std::runtime_error("oracle: need at least two points");

    std::vector<double> center(n, C / 2.0), best_alpha(n, 0.0);
    double best = 0.0;  // alpha = 0 is always feasible
    double span = C;

    std::vector<double> alpha(n, 0.0);
    for (std::size_t level = 0; level < levels; ++level) {
        std::vector<std::size_t> index(n - 1, 0);
        while (true) {
            bool feasible = true;
            double balance = 0.0;
            for (std::size_t d = 0; d < n - 1; ++d) {
                double lo = std::max(0.0, center[d] - span / 2.0);
                double hi = std::min(C, center[d] + span / 2.0);
                alpha[d] = lo + (hi - lo) * static_cast<double>(index[d]) /
                                    static_cast<double>(steps - 1);
                balance += alpha[d] * y[d];
            }
            alpha[n - 1] = -balance * y[n - 1];
            feasible = alpha[n - 1] >= -1e-12 && alpha[n - 1] <= C + 1e-12;
            if (feasible) {
                alpha[n - 1] = std::clamp(alpha[n - 1], 0.0, C);
                double value = dual_objective(K, y, alpha);
                if (value > best) {
                    best = value;
                    best_alpha = alpha;
                }
            }
            std::size_t d = 0;
            while (d < n - 1 && ++index[d] == steps) index[d++] = 0;
            if (d == n - 1) break;
        }
        center = best_alpha;
        span *= 4.0 / static_cast<double>(steps);
    }
    return best;
}

}  // namespace oracle
