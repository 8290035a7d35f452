#include "attrition/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "attrition/benchmark.hpp"
#include "attrition/csv.hpp"
#include "attrition/dataset.hpp"
#include "attrition/metrics.hpp"
#include "attrition/model_io.hpp"
#include "attrition/reports.hpp"
#include "attrition/stats.hpp"

namespace attrition {

namespace {

namespace fs = std::filesystem;

constexpr const char* kDefaultDrop = "EmployeeCount,StandardHours,Over18,EmployeeNumber";

struct DataOpts {
    std::string data;
    std::string schema;
    std::string drop = kDefaultDrop;
    std::string encoding = "integer";
    std::string out = "out";
    double test_fraction = 0.30;
    bool stratified = false;
    std::uint64_t seed = 5;
};

struct ModelOpts {
    std::size_t estimators = 1000;
    double learning_rate = 0.1;
    std::size_t trees = 100;
    std::size_t max_depth = 0;
    std::size_t min_samples_leaf = 1;
    double svm_c = 1.0;
    std::string kernel = "linear";
    std::string gamma_policy = "instances";
    double gamma = 0.0;
    double tolerance = 1e-3;
    std::size_t max_passes = 10000;
};

void add_data_options(CLI::App* cmd, DataOpts& opts, bool with_split) {
    cmd->add_option("--data", opts.data, "CSV dataset path")->required();
    cmd->add_option("--schema", opts.schema, "column schema path")->required();
    cmd->add_option("--drop", opts.drop, "comma-separated columns to drop")
        ->capture_default_str();
    cmd->add_option("--encoding", opts.encoding, "categorical encoding")
        ->check(CLI::IsMember({"integer", "one_hot"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "output directory")
        ->envname("ATTRITION_OUT")
        ->capture_default_str();
    if (with_split) {
        cmd->add_option("--seed", opts.seed, "master seed")->capture_default_str();
        cmd->add_option("--test-fraction", opts.test_fraction, "held-out fraction")
            ->capture_default_str();
        cmd->add_flag("--stratified", opts.stratified, "preserve the label ratio in the split");
    }
}

void add_model_options(CLI::App* cmd, ModelOpts& opts) {
    cmd->add_option("--estimators", opts.estimators, "boosting rounds")->capture_default_str();
    cmd->add_option("--learning-rate", opts.learning_rate, "boosting shrinkage")
        ->capture_default_str();
    cmd->add_option("--trees", opts.trees, "forest size")->capture_default_str();
    cmd->add_option("--max-depth", opts.max_depth, "tree depth cap, 0 = unlimited")
        ->capture_default_str();
    cmd->add_option("--min-samples-leaf", opts.min_samples_leaf, "smallest allowed leaf")
        ->capture_default_str();
    cmd->add_option("--svm-c", opts.svm_c, "soft-margin penalty")->capture_default_str();
    cmd->add_option("--kernel", opts.kernel, "svm kernel")
        ->check(CLI::IsMember({"linear", "rbf"}))
        ->capture_default_str();
    cmd->add_option("--gamma-policy", opts.gamma_policy, "rbf gamma rule")
        ->check(CLI::IsMember({"instances", "features", "explicit"}))
        ->capture_default_str();
    cmd->add_option("--gamma", opts.gamma, "rbf gamma under --gamma-policy explicit")
        ->capture_default_str();
    cmd->add_option("--tolerance", opts.tolerance, "svm KKT tolerance")->capture_default_str();
    cmd->add_option("--max-passes", opts.max_passes, "svm outer-pass cap")
        ->capture_default_str();
}

std::vector<std::string> split_list(const std::string& joined) {
    std::vector<std::string> items;
    std::string item;
    for (char c : joined) {
        if (c == ',') {
            if (!item.empty()) items.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty()) items.push_back(item);
    return items;
}

Dataset load_encoded(const DataOpts& opts) {
    std::vector<ColumnSpec> schema = load_schema(opts.schema);
    RawTable table = load_csv(opts.data, schema);
    EncodePolicy policy =
        opts.encoding == "one_hot" ? EncodePolicy::one_hot : EncodePolicy::integer_codes;
    return encode(table, schema, split_list(opts.drop), policy);
}

SplitSpec split_spec(const DataOpts& opts) {
    SplitSpec spec;
    spec.test_fraction = opts.test_fraction;
    spec.seed = opts.seed;
    spec.stratified = opts.stratified;
    return spec;
}

AdaBoostParams adaboost_params(const ModelOpts& opts, std::uint64_t seed) {
    return {opts.estimators, opts.learning_rate, seed};
}

ForestParams forest_params(const ModelOpts& opts, std::uint64_t seed) {
    ForestParams params;
    params.n_trees = opts.trees;
    params.max_depth = opts.max_depth;
    params.min_samples_leaf = opts.min_samples_leaf;
    params.seed = seed;
    return params;
}

SvmParams svm_params(const ModelOpts& opts, std::uint64_t seed) {
    SvmParams params;
    params.C = opts.svm_c;
    params.kernel = opts.kernel == "rbf" ? Kernel::rbf : Kernel::linear;
    if (opts.gamma_policy == "features")
        params.gamma_policy = GammaPolicy::one_over_n_features;
    else if (opts.gamma_policy == "explicit")
        params.gamma_policy = GammaPolicy::explicit_value;
    else
        params.gamma_policy = GammaPolicy::one_over_n_instances;
    params.gamma = opts.gamma;
    params.tolerance = opts.tolerance;
    params.max_passes = opts.max_passes;
    params.seed = seed;
    return params;
}

std::vector<ModelSpec> build_specs(const std::string& models, const ModelOpts& opts) {
    std::vector<ModelSpec> specs;
    for (const std::string& name : split_list(models)) {
        if (name == "adaboost")
            specs.push_back(ModelSpec::adaboost(adaboost_params(opts, 0)));
        else if (name == "random_forest")
            specs.push_back(ModelSpec::random_forest(forest_params(opts, 0)));
        else if (name == "svm")
            specs.push_back(ModelSpec::svm(svm_params(opts, 0)));
        else
            throw std::runtime_error("cli: unknown model '" + name + "'");
    }
    if (specs.empty()) throw std::runtime_error("cli: no models requested");
    return specs;
}

std::string accuracy_line(const EvalReport& report) {
    char line[160];
    std::snprintf(line, sizeof line, "%s: accuracy %.4f, auc %.4f", report.model.c_str(),
                  report.accuracy, report.auc);
    return line;
}

int cmd_describe(const DataOpts& data_opts) {
    Dataset data = load_encoded(data_opts);
    nlohmann::json summary = dataset_summary(data);
    fs::path out = fs::path(data_opts.out) / "dataset_summary.json";
    write_text_atomic(out, summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    std::cout << "wrote " << out.string() << '\n';
    return 0;
}

int cmd_correlate(const DataOpts& data_opts, const std::vector<std::string>& hists,
                  const std::vector<std::string>& scatters) {
    Dataset data = load_encoded(data_opts);
    CorrelationMatrix matrix = pearson_matrix(data);
    fs::path dir(data_opts.out);
    write_text_atomic(dir / "correlation.csv", correlation_csv(matrix));
    write_text_atomic(dir / "correlation.svg", correlation_svg(matrix));
    std::cout << "wrote " << (dir / "correlation.csv").string() << " and .svg\n";

    for (const std::string& pair : hists) {
        std::vector<std::string> names = split_list(pair);
        if (names.size() != 2)
            throw std::runtime_error("cli: --hist expects two feature names, got '" + pair + "'");
        Histogram2D hist = histogram2d(data, names[0], names[1]);
        fs::path out = dir / ("hist_" + names[0] + "_" + names[1] + ".csv");
        write_text_atomic(out, histogram_csv(hist));
        std::cout << "wrote " << out.string() << '\n';
    }
    for (const std::string& triple : scatters) {
        std::vector<std::string> names = split_list(triple);
        if (names.size() != 3)
            throw std::runtime_error("cli: --scatter expects three feature names, got '" +
                                     triple + "'");
        Scatter3D scatter = scatter3d(data, names[0], names[1], names[2]);
        fs::path out = dir / ("scatter_" + names[0] + "_" + names[1] + "_" + names[2] + ".csv");
        write_text_atomic(out, scatter_csv(scatter));
        std::cout << "wrote " << out.string() << '\n';
    }
    return 0;
}

int cmd_train(const DataOpts& data_opts, const ModelOpts& model_opts, const std::string& model,
              std::string model_out) {
    Dataset data = load_encoded(data_opts);
    Split parts = split(data, split_spec(data_opts));

    AnyModel trained = [&]() -> AnyModel {
        if (model == "adaboost")
            return train_adaboost(parts.train, adaboost_params(model_opts, data_opts.seed));
        if (model == "random_forest")
            return train_forest(parts.train, forest_params(model_opts, data_opts.seed));
        return train_svm(parts.train, svm_params(model_opts, data_opts.seed));
    }();

    if (model_out.empty()) model_out = (fs::path(data_opts.out) / (model + ".json")).string();
    write_text_atomic(model_out, model_to_json(trained).dump(2) + "\n");
    std::cout << "wrote " << model_out << '\n';
    return 0;
}

int cmd_evaluate(const DataOpts& data_opts, const std::string& model_file) {
    Dataset data = load_encoded(data_opts);
    Split parts = split(data, split_spec(data_opts));
    AnyModel model = model_from_json(nlohmann::json::parse(read_text_file(model_file)));

    EvalReport report;
    report.split_seed = data_opts.seed;
    report.test_fraction = data_opts.test_fraction;
    const Dataset& test = parts.test;
    std::vector<double> scores(test.n_rows());
    std::vector<int> predictions(test.n_rows());

    struct Scorer {
        const Dataset& test;
        std::vector<double>& scores;
        std::vector<int>& predictions;
        std::string operator()(const AdaBoostModel& m) const {
            for (std::size_t i = 0; i < test.n_rows(); ++i) {
                scores[i] = adaboost_score(m, test.features.row(i));
                predictions[i] = scores[i] > 0.0 ? 1 : 0;
            }
            return "adaboost";
        }
        std::string operator()(const ForestModel& m) const {
            for (std::size_t i = 0; i < test.n_rows(); ++i) {
                ForestVote vote = forest_predict(m, test.features.row(i));
                scores[i] = vote.score;
                predictions[i] = vote.label;
            }
            return "random_forest";
        }
        std::string operator()(const SvmModel& m) const {
            for (std::size_t i = 0; i < test.n_rows(); ++i) {
                scores[i] = svm_score(m, test.features.row(i));
                predictions[i] = scores[i] > 0.0 ? 1 : 0;
            }
            return "svm";
        }
    };
    report.model = std::visit(Scorer{test, scores, predictions}, model);

    AccuracyResult acc = accuracy(predictions, test.labels);
    report.accuracy = acc.value;
    report.confusion = acc.confusion;
    report.roc = roc_curve(scores, test.labels);
    report.auc = auc(report.roc);

    fs::path out = fs::path(data_opts.out) / ("eval_" + report.model + ".json");
    write_text_atomic(out, report_to_json(report).dump(2) + "\n");
    std::cout << accuracy_line(report) << '\n';
    std::cout << "wrote " << out.string() << '\n';
    return 0;
}

int cmd_benchmark(const DataOpts& data_opts, const ModelOpts& model_opts,
                  const std::string& models, std::size_t iterations) {
    Dataset data = load_encoded(data_opts);
    BenchmarkTable table =
        run_benchmark(data, build_specs(models, model_opts), iterations, data_opts.seed,
                      split_spec(data_opts));
    fs::path dir(data_opts.out);
    std::string csv = benchmark_csv(table);
    write_text_atomic(dir / "benchmark.csv", csv);
    write_text_atomic(dir / "benchmark.json", benchmark_to_json(table).dump(2) + "\n");
    std::cout << csv;
    std::cout << "wrote " << (dir / "benchmark.csv").string() << " and .json\n";
    return 0;
}

int cmd_roc(const DataOpts& data_opts, const ModelOpts& model_opts, const std::string& models) {
    Dataset data = load_encoded(data_opts);
    BenchmarkTable table =
        run_benchmark(data, build_specs(models, model_opts), 1, data_opts.seed,
                      split_spec(data_opts));
    const BenchmarkIteration& iteration = table.iterations.front();

    fs::path dir(data_opts.out);
    std::vector<RocSeries> series;
    for (const EvalReport& report : iteration.reports) {
        if (report.failed())
            throw std::runtime_error("cli: training failed for '" + report.model +
                                     "': " + report.error);
        fs::path out = dir / ("roc_" + report.model + ".csv");
        write_text_atomic(out, roc_csv(report.roc));
        std::cout << accuracy_line(report) << '\n';
        char name[96];
        std::snprintf(name, sizeof name, "%s (AUC %.3f)", report.model.c_str(), report.auc);
        series.push_back({name, report.roc});
    }
    write_text_atomic(dir / "roc_overlay.svg", roc_overlay_svg(series));
    std::cout << "wrote " << (dir / "roc_overlay.svg").string() << '\n';
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"attrition analytics and benchmark pipeline"};
    app.require_subcommand(1);
    // Placed before the subcommand: attrition --config run.cfg benchmark.
    // Keys address subcommand options as <subcommand>.<option> or through an
    // INI [<subcommand>] section.
    app.set_config("--config", "", "option file (key=value, sections per subcommand)");

    DataOpts data_opts;
    ModelOpts model_opts;
    std::string models = "adaboost,random_forest,svm";
    std::string model = "adaboost";
    std::string model_file;
    std::string model_out;
    std::size_t iterations = 3;
    std::vector<std::string> hists;
    std::vector<std::string> scatters;

    CLI::App* describe = app.add_subcommand("describe", "summarize the encoded dataset");
    add_data_options(describe, data_opts, false);

    CLI::App* correlate = app.add_subcommand("correlate", "correlation matrix and figure data");
    add_data_options(correlate, data_opts, false);
    correlate->add_option("--hist", hists, "2D histogram export, e.g. Age,JobLevel")
        ->take_all();
    correlate->add_option("--scatter", scatters, "3D scatter export, e.g. A,B,Attrition")
        ->take_all();

    CLI::App* train = app.add_subcommand("train", "fit one model on the training split");
    add_data_options(train, data_opts, true);
    add_model_options(train, model_opts);
    train->add_option("--model", model, "model to fit")
        ->check(CLI::IsMember({"adaboost", "random_forest", "svm"}))
        ->capture_default_str();
    train->add_option("--model-out", model_out, "model file path (default <out>/<model>.json)");

    CLI::App* evaluate = app.add_subcommand("evaluate", "score a saved model on the test split");
    add_data_options(evaluate, data_opts, true);
    evaluate->add_option("--model-file", model_file, "serialized model path")->required();

    CLI::App* benchmark = app.add_subcommand("benchmark", "multi-iteration accuracy table");
    add_data_options(benchmark, data_opts, true);
    add_model_options(benchmark, model_opts);
    benchmark->add_option("--models", models, "comma-separated model list")
        ->capture_default_str();
    benchmark->add_option("--iterations", iterations, "number of random splits")
        ->capture_default_str();

    CLI::App* roc = app.add_subcommand("roc", "ROC curves and overlay for one split");
    add_data_options(roc, data_opts, true);
    add_model_options(roc, model_opts);
    roc->add_option("--models", models, "comma-separated model list")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("attrition");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, returns 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        if (describe->parsed()) return cmd_describe(data_opts);
        if (correlate->parsed()) return cmd_correlate(data_opts, hists, scatters);
        if (train->parsed()) return cmd_train(data_opts, model_opts, model, model_out);
        if (evaluate->parsed()) return cmd_evaluate(data_opts, model_file);
        if (benchmark->parsed()) return cmd_benchmark(data_opts, model_opts, models, iterations);
        if (roc->parsed()) return cmd_roc(data_opts, model_opts, models);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace attrition
