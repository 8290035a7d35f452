#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "attrition/benchmark.hpp"
#include "attrition/dataset.hpp"
#include "attrition/metrics.hpp"
#include "attrition/reports.hpp"
#include "attrition/rng.hpp"
#include "support/oracles.hpp"

using namespace attrition;

namespace {

struct Scored {
    std::vector<double> scores;
    std::vector<int> labels;
};

// Integer-grid scores force plenty of exact ties; the shift keeps them
// recognizably doubles.
Scored random_scored(Rng& rng, std::size_t n, bool tie_heavy) {
    Scored s;
    s.scores.resize(n);
    s.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.scores[i] = tie_heavy ? static_cast<double>(rng.below(8)) - 3.0 : rng.unit();
        s.labels[i] = rng.below(2) == 0 ? 0 : 1;
    }
    s.labels[0] = 1;  // both classes present
    s.labels[1] = 0;
    return s;
}

Dataset synthetic_dataset(Rng& rng, std::size_t n) {
    Dataset data;
    data.features = Matrix(n, 3);
    data.labels.resize(n);
    data.feature_names = {"f0", "f1", "f2"};
    data.feature_info = {{"f0", ColumnKind::numeric, 0},
                         {"f1", ColumnKind::numeric, 0},
                         {"f2", ColumnKind::numeric, 0}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 3; ++j) data.features.at(i, j) = rng.unit();
        data.labels[i] = data.features.at(i, 0) + data.features.at(i, 1) > 1.0 ? 1 : 0;
    }
    data.labels[0] = 1;
    data.labels[1] = 0;
    return data;
}

std::vector<ModelSpec> tiny_specs() {
    AdaBoostParams ada;
    ada.n_estimators = 25;
    ForestParams forest;
    forest.n_trees = 15;
    return {ModelSpec::adaboost(ada), ModelSpec::svm(), ModelSpec::random_forest(forest)};
}

}  // namespace

TEST_CASE("trapezoid auc equals the pairwise ranking statistic") {
    Rng rng(4040);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(49);  // 2..50
        Scored s = random_scored(rng, n, trial % 2 == 0);
        double area = auc(roc_curve(s.scores, s.labels));
        double pairs = oracle::pairwise_auc(s.scores, s.labels);
        CAPTURE(trial);
        CHECK(std::abs(area - pairs) <= 1e-9);
    }
}

TEST_CASE("roc curve matches an independent threshold sweep") {
    Rng rng(4041);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng.below(30);
        Scored s = random_scored(rng, n, trial % 2 == 0);
        RocCurve curve = roc_curve(s.scores, s.labels);
        std::vector<oracle::RocPoint> ref = oracle::roc_by_thresholds(s.scores, s.labels);
        REQUIRE(curve.points.size() == ref.size());
        REQUIRE(curve.thresholds.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            CAPTURE(trial);
            CAPTURE(k);
            CHECK(std::abs(curve.points[k].fpr - ref[k].fpr) <= 1e-12);
            CHECK(std::abs(curve.points[k].tpr - ref[k].tpr) <= 1e-12);
            CHECK(curve.thresholds[k] == ref[k].threshold);
        }
    }
}

TEST_CASE("roc curves run from (0,0) to (1,1) and never step backwards") {
    Rng rng(4042);
    for (int trial = 0; trial < 25; ++trial) {
        Scored s = random_scored(rng, 3 + rng.below(40), true);
        RocCurve curve = roc_curve(s.scores, s.labels);
        REQUIRE(curve.points.size() >= 2);
        CHECK(curve.points.front().fpr == 0.0);
        CHECK(curve.points.front().tpr == 0.0);
        CHECK(curve.points.back().fpr == 1.0);
        CHECK(curve.points.back().tpr == 1.0);
        CHECK(curve.thresholds.front() == std::numeric_limits<double>::infinity());
        for (std::size_t k = 1; k < curve.points.size(); ++k) {
            CHECK(curve.points[k].fpr >= curve.points[k - 1].fpr);
            CHECK(curve.points[k].tpr >= curve.points[k - 1].tpr);
            CHECK(curve.thresholds[k] < curve.thresholds[k - 1]);
        }
    }
}

TEST_CASE("auc is invariant under strictly increasing score transforms") {
    Rng rng(4043);
    for (int trial = 0; trial < 20; ++trial) {
        Scored s = random_scored(rng, 4 + rng.below(30), trial % 2 == 0);
        double base = auc(roc_curve(s.scores, s.labels));
        auto transformed = [&](auto f) {
            std::vector<double> t(s.scores.size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(s.scores[i]);
            return auc(roc_curve(t, s.labels));
        };
        CHECK(transformed([](double v) { return 3.0 * v + 7.0; }) == base);
        CHECK(transformed([](double v) { return std::tanh(v); }) == base);
        CHECK(transformed([](double v) { return std::exp(v / 4.0); }) == base);
    }
}

TEST_CASE("accuracy decomposes into exact confusion counts") {
    std::vector<int> truth = {1, 1, 1, 0, 0, 0, 0, 1};
    std::vector<int> preds = {1, 0, 1, 0, 1, 0, 0, 0};
    AccuracyResult r = accuracy(preds, truth);
    CHECK(r.confusion.tp == 2);
    CHECK(r.confusion.fn == 2);
    CHECK(r.confusion.fp == 1);
    CHECK(r.confusion.tn == 3);
    CHECK(r.confusion.total() == 8);
    CHECK(r.value == 5.0 / 8.0);

    CHECK_THROWS(accuracy({}, {}));
    CHECK_THROWS(accuracy({1, 0}, {1}));
    CHECK_THROWS(accuracy({1, 2}, {1, 0}));
    CHECK_THROWS(accuracy({1, 0}, {1, -1}));
}

TEST_CASE("roc rejects single-class truth") {
    CHECK_THROWS(roc_curve({0.1, 0.2, 0.3}, {1, 1, 1}));
    CHECK_THROWS(roc_curve({0.1, 0.2, 0.3}, {0, 0, 0}));
    CHECK_THROWS(roc_curve({0.1, 0.2}, {1}));
    CHECK_THROWS(roc_curve({}, {}));
}

TEST_CASE("benchmark evaluates every model on the same split each iteration") {
    Rng rng(4044);
    Dataset data = synthetic_dataset(rng, 120);
    BenchmarkTable table = run_benchmark(data, tiny_specs(), 3, 7);

    REQUIRE(table.iterations.size() == 3);
    CHECK(table.master_seed == 7);
    CHECK(table.test_fraction == 0.30);
    REQUIRE(table.model_names == std::vector<std::string>{"adaboost", "svm", "random_forest"});

    for (std::size_t i = 0; i < 3; ++i) {
        const BenchmarkIteration& it = table.iterations[i];
        CHECK(it.index == i + 1);
        REQUIRE(it.reports.size() == 3);
        for (std::size_t m = 0; m < 3; ++m) {
            CHECK(it.reports[m].model == table.model_names[m]);
            CHECK(it.reports[m].split_seed == it.split_seed);
            CHECK(it.reports[m].test_fraction == 0.30);
            CHECK_FALSE(it.reports[m].failed());
            CHECK(it.reports[m].confusion.total() == 36);  // round(120 * 0.30)
        }
    }
    CHECK(table.iterations[0].split_seed != table.iterations[1].split_seed);
    CHECK(table.iterations[1].split_seed != table.iterations[2].split_seed);
}

TEST_CASE("benchmark baseline is the full-dataset majority share, every iteration") {
    Rng rng(4045);
    Dataset data = synthetic_dataset(rng, 90);
    std::size_t majority = std::max(data.count_label(0), data.count_label(1));
    double share = static_cast<double>(majority) / 90.0;

    BenchmarkTable table = run_benchmark(data, tiny_specs(), 3, 11);
    for (const BenchmarkIteration& it : table.iterations) {
        CHECK(it.baseline.accuracy == doctest::Approx(share).epsilon(1e-12));
        CHECK(it.baseline.confusion.total() == 90);
        CHECK_FALSE(it.baseline.failed());
    }
}

TEST_CASE("benchmark tables are a pure function of their inputs") {
    Rng rng(4046);
    Dataset data = synthetic_dataset(rng, 100);
    BenchmarkTable a = run_benchmark(data, tiny_specs(), 2, 31);
    BenchmarkTable b = run_benchmark(data, tiny_specs(), 2, 31);
    CHECK(benchmark_to_json(a).dump() == benchmark_to_json(b).dump());

    BenchmarkTable c = run_benchmark(data, tiny_specs(), 2, 32);
    CHECK(benchmark_to_json(a).dump() != benchmark_to_json(c).dump());
}

TEST_CASE("a failing model marks its cell and leaves the rest standing") {
    Rng rng(4047);
    Dataset data = synthetic_dataset(rng, 80);
    SvmParams bad;
    bad.C = -1.0;
    AdaBoostParams ada;
    ada.n_estimators = 10;
    std::vector<ModelSpec> specs = {ModelSpec::adaboost(ada), ModelSpec::svm(bad)};

    BenchmarkTable table = run_benchmark(data, specs, 2, 3);
    for (const BenchmarkIteration& it : table.iterations) {
        REQUIRE(it.reports.size() == 2);
        CHECK_FALSE(it.reports[0].failed());
        CHECK(it.reports[1].failed());
        CHECK(!it.reports[1].error.empty());
        CHECK(it.reports[1].accuracy == 0.0);
    }

    std::string csv = benchmark_csv(table);
    CHECK(csv.find("ERROR") != std::string::npos);
    CHECK(csv.find("mean") != std::string::npos);

    nlohmann::json j = benchmark_to_json(table);
    CHECK(j["iterations"][0]["reports"][1]["error"].get<std::string>() != "");
}
