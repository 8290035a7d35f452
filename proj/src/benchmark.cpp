#include "attrition/benchmark.hpp"

#include <stdexcept>

#include "attrition/rng.hpp"

namespace attrition {

namespace {

/// Fills accuracy/confusion/roc/auc from per-row scores, where `predict`
/// turns a score into a class.
template <typename Score, typename Predict>
void fill_metrics(EvalReport& report, const Dataset& test, Score&& score, Predict&& predict) {
    std::vector<double> scores(test.n_rows());
    std::vector<int> predictions(test.n_rows());
    for (std::size_t i = 0; i < test.n_rows(); ++i) {
        scores[i] = score(test.features.row(i));
        predictions[i] = predict(scores[i]);
    }
    AccuracyResult acc = accuracy(predictions, test.labels);
    report.accuracy = acc.value;
    report.confusion = acc.confusion;
    report.roc = roc_curve(scores, test.labels);
    report.auc = auc(report.roc);
}

EvalReport evaluate_spec(const ModelSpec& spec, const Dataset& train, const Dataset& test,
                         std::uint64_t model_seed) {
    EvalReport report;
    report.model = spec.name;
    try {
        switch (spec.kind) {
            case ModelKind::adaboost: {
                AdaBoostParams params = spec.adaboost_params;
                params.seed = model_seed;
                AdaBoostModel model = train_adaboost(train, params);
                fill_metrics(
                    report, test, [&](auto row) { return adaboost_score(model, row); },
                    [](double s) { return s > 0.0 ? 1 : 0; });
                break;
            }
            case ModelKind::random_forest: {
                ForestParams params = spec.forest_params;
                params.seed = model_seed;
                ForestModel model = train_forest(train, params);
                fill_metrics(
                    report, test, [&](auto row) { return forest_predict(model, row).score; },
                    [](double s) { return s > 0.5 ? 1 : 0; });
                break;
            }
            case ModelKind::svm: {
                SvmParams params = spec.svm_params;
                params.seed = model_seed;
                SvmModel model = train_svm(train, params);
                fill_metrics(
                    report, test, [&](auto row) { return svm_score(model, row); },
                    [](double s) { return s > 0.0 ? 1 : 0; });
                break;
            }
        }
    } catch (const std::exception& e) {
        report.error = e.what();
    }
    return report;
}

EvalReport evaluate_baseline(const Dataset& full) {
    EvalReport report;
    report.model = "baseline";
    std::size_t ones = 0;
    for (int label : full.labels) ones += label == 1;
    int majority = 2 * ones > full.labels.size() ? 1 : 0;

    std::vector<int> predictions(full.n_rows(), majority);
    AccuracyResult acc = accuracy(predictions, full.labels);
    report.accuracy = acc.value;
    report.confusion = acc.confusion;
    // A constant scorer sweeps in one step: the chance diagonal.
    std::vector<double> scores(full.n_rows(), static_cast<double>(majority));
    try {
        report.roc = roc_curve(scores, full.labels);
        report.auc = auc(report.roc);
    } catch (const std::exception& e) {
        report.error = e.what();  // single-class data; accuracy still stands
    }
    return report;
}

}  // namespace

BenchmarkTable run_benchmark(const Dataset& data, const std::vector<ModelSpec>& specs,
                             std::size_t n_iterations, std::uint64_t master_seed,
                             const SplitSpec& split_base) {
    if (n_iterations == 0) throw std::runtime_error("eval: n_iterations must be at least 1");
    for (const ModelSpec& spec : specs)
        if (spec.name.empty()) throw std::runtime_error("eval: model spec needs a name");

    BenchmarkTable table;
    table.master_seed = master_seed;
    table.test_fraction = split_base.test_fraction;
    for (const ModelSpec& spec : specs) table.model_names.push_back(spec.name);

    // Split-independent context anchor: the majority-class share of the
    // whole dataset, repeated with every iteration so each accuracy row is
    // read against the same number.
    EvalReport baseline = evaluate_baseline(data);

    for (std::size_t i = 0; i < n_iterations; ++i) {
        BenchmarkIteration iteration;
        iteration.index = i + 1;
        iteration.split_seed = mix_seed(master_seed, i);

        SplitSpec split_spec = split_base;
        split_spec.seed = iteration.split_seed;
        Split parts = split(data, split_spec);

        for (std::size_t m = 0; m < specs.size(); ++m) {
            std::uint64_t model_seed = mix_seed(iteration.split_seed, m + 1);
            EvalReport report = evaluate_spec(specs[m], parts.train, parts.test, model_seed);
            report.split_seed = iteration.split_seed;
            report.test_fraction = split_base.test_fraction;
            iteration.reports.push_back(std::move(report));
        }
        iteration.baseline = baseline;
        iteration.baseline.split_seed = iteration.split_seed;
        iteration.baseline.test_fraction = split_base.test_fraction;
        table.iterations.push_back(std::move(iteration));
    }
    return table;
}

}  // namespace attrition
