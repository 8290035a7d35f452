#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "attrition/dataset.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

enum class Kernel { linear, rbf };

/// How rbf gamma is chosen at fit time. one_over_n_instances uses the number
/// of training rows, one_over_n_features the feature count; explicit_value
/// uses SvmParams::gamma verbatim.
enum class GammaPolicy { one_over_n_instances, one_over_n_features, explicit_value };

struct SvmParams {
    double C = 1.0;
    Kernel kernel = Kernel::linear;
    GammaPolicy gamma_policy = GammaPolicy::one_over_n_instances;
    double gamma = 0.0;  // read only under GammaPolicy::explicit_value
    double tolerance = 1e-3;
    std::size_t max_passes = 10000;
    std::uint64_t seed = 0;
};

/// Per-feature standardization (mean 0, population stddev 1) fitted on the
/// training rows; a zero-variance feature keeps stddev 1 so it maps to 0.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> stddev;

    static Scaler fit(const Matrix& X);
    Matrix transform(const Matrix& X) const;
    std::vector<double> transform_row(std::span<const double> x) const;
};

/// exp(-gamma * ||x - z||^2), in (0, 1]. Requires equal-length rows.
double rbf_kernel(std::span<const double> x, std::span<const double> z, double gamma);

/// Raw output of the dual solver. pass_objectives holds the dual objective
/// after every outer pass; it is non-decreasing. converged is false when the
/// pass cap ran out before the KKT conditions held within tolerance.
struct DualSolution {
    std::vector<double> alpha;
    double b = 0.0;
    double objective = 0.0;
    bool converged = false;
    std::size_t passes = 0;
    std::vector<double> pass_objectives;
};

/// Maximizes the soft-margin dual over 0 <= alpha_i <= C, sum(alpha_i y_i)=0
/// by sequential minimal optimization: repeatedly pick a KKT-violating pair,
/// solve the two-variable subproblem analytically, and update the error
/// cache and bias. y entries must be -1 or +1; rows are used as given (no
/// scaling). The seed only drives the working-pair tie-break order.
DualSolution solve_dual(const Matrix& X, const std::vector<int>& y_pm, double C, Kernel kernel,
                        double gamma, double tolerance, std::size_t max_passes,
                        std::uint64_t seed);

/// Trained classifier. Linear models carry the materialized weight vector w;
/// rbf models carry the support vectors with their dual coefficients
/// alpha_i * y_i. The fitted scaler is stored so scoring standardizes its
/// input itself.
struct SvmModel {
    Kernel kernel = Kernel::linear;
    double gamma = 0.0;
    double C = 1.0;
    std::vector<double> w;
    double b = 0.0;
    Matrix support_vectors;
    std::vector<double> dual_coef;
    Scaler scaler;
    bool converged = false;
    std::size_t n_features = 0;
};

/// Standardizes the training rows, solves the dual, and assembles the model.
/// Throws if the training labels contain a single class. A run that hits
/// max_passes returns a usable model with converged = false.
SvmModel train_svm(const Matrix& X, const std::vector<int>& y, const SvmParams& params);
SvmModel train_svm(const Dataset& data, const SvmParams& params);

/// Signed decision value; class 1 iff the score is strictly positive.
double svm_score(const SvmModel& model, std::span<const double> x);
int svm_predict(const SvmModel& model, std::span<const double> x);

}  // namespace attrition
