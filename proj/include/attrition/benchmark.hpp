#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attrition/adaboost.hpp"
#include "attrition/dataset.hpp"
#include "attrition/forest.hpp"
#include "attrition/metrics.hpp"
#include "attrition/svm.hpp"

namespace attrition {

enum class ModelKind { adaboost, random_forest, svm };

/// One model column of the benchmark: a kind tag plus the hyperparameters
/// for that kind (the other two parameter sets are ignored). Seeds inside
/// the parameter sets are overwritten per iteration by run_benchmark.
struct ModelSpec {
    std::string name;
    ModelKind kind = ModelKind::adaboost;
    AdaBoostParams adaboost_params;
    ForestParams forest_params;
    SvmParams svm_params;

    static ModelSpec adaboost(const AdaBoostParams& p = {}) {
        return {"adaboost", ModelKind::adaboost, p, {}, {}};
    }
    static ModelSpec random_forest(const ForestParams& p = {}) {
        return {"random_forest", ModelKind::random_forest, {}, p, {}};
    }
    static ModelSpec svm(const SvmParams& p = {}) {
        return {"svm", ModelKind::svm, {}, {}, p};
    }
};

/// Metrics of one model on one split. A failed training run leaves `error`
/// non-empty and the metric fields at their defaults; the table still
/// carries the cell.
struct EvalReport {
    std::string model;
    double accuracy = 0.0;
    ConfusionMatrix confusion;
    RocCurve roc;
    double auc = 0.0;
    std::uint64_t split_seed = 0;
    double test_fraction = 0.0;
    std::string error;

    bool failed() const { return !error.empty(); }
};

/// All requested models evaluated on one shared split, plus the
/// majority-class baseline of the full dataset (split-independent, repeated
/// per iteration as the context anchor).
struct BenchmarkIteration {
    std::size_t index = 0;  // 1-based, as reported
    std::uint64_t split_seed = 0;
    std::vector<EvalReport> reports;
    EvalReport baseline;
};

struct BenchmarkTable {
    std::vector<std::string> model_names;
    std::vector<BenchmarkIteration> iterations;
    std::uint64_t master_seed = 0;
    double test_fraction = 0.0;
};

/// Runs n_iterations random splits; iteration i uses split seed
/// mix_seed(master_seed, i) and evaluates every model on that same split.
/// Per-model training seeds derive from the split seed, so the whole table
/// is a pure function of (data, specs, n_iterations, master_seed, split).
/// Training failures are recorded in the affected cell, not thrown.
BenchmarkTable run_benchmark(const Dataset& data, const std::vector<ModelSpec>& specs,
                             std::size_t n_iterations, std::uint64_t master_seed,
                             const SplitSpec& split_base = {});

}  // namespace attrition
