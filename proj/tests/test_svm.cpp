#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "attrition/rng.hpp"
#include "attrition/svm.hpp"
#include "support/oracles.hpp"

using namespace attrition;

namespace {

struct Fixture {
    Matrix X;
    std::vector<int> y_pm;  // -1 / +1
};

Fixture random_fixture(Rng& rng, std::size_t n, std::size_t d) {
    Fixture f;
    f.X = Matrix(n, d);
    f.y_pm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) f.X.at(i, j) = 4.0 * rng.unit() - 2.0;
        f.y_pm[i] = rng.below(2) == 0 ? -1 : +1;
    }
    f.y_pm[0] = +1;  // both classes present
    f.y_pm[1] = -1;
    return f;
}

std::vector<std::vector<double>> kernel_matrix(const Matrix& X, Kernel kernel, double gamma) {
    std::vector<std::vector<double>> K(X.rows, std::vector<double>(X.rows));
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.rows; ++j) {
            if (kernel == Kernel::rbf) {
                K[i][j] = rbf_kernel(X.row(i), X.row(j), gamma);
            } else {
                double sum = 0.0;
                for (std::size_t c = 0; c < X.cols; ++c) sum += X.at(i, c) * X.at(j, c);
                K[i][j] = sum;
            }
        }
    return K;
}

double decision(const Matrix& X, const std::vector<int>& y, const DualSolution& sol,
                Kernel kernel, double gamma, std::size_t i) {
    double sum = sol.b;
    for (std::size_t j = 0; j < X.rows; ++j) {
        if (sol.alpha[j] == 0.0) continue;
        double k = kernel == Kernel::rbf
                       ? rbf_kernel(X.row(j), X.row(i), gamma)
                       : [&] {
                             double s = 0.0;
                             for (std::size_t c = 0; c < X.cols; ++c)
                                 s += X.at(j, c) * X.at(i, c);
                             return s;
                         }();
        sum += sol.alpha[j] * y[j] * k;
    }
    return sum;
}

// Training sets where the two classes sit in clearly separated blobs.
Fixture blob_fixture(Rng& rng, std::size_t n, std::size_t d, double spread) {
    Fixture f;
    f.X = Matrix(n, d);
    f.y_pm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int cls = i % 2 == 0 ? +1 : -1;
        f.y_pm[i] = cls;
        for (std::size_t j = 0; j < d; ++j)
            f.X.at(i, j) = cls * 2.0 + spread * (rng.unit() - 0.5);
    }
    return f;
}

}  // namespace

TEST_CASE("smo reaches the box-grid dual optimum on small fixtures") {
    Rng rng(808);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng.below(5);  // 2..6
        std::size_t d = 1 + rng.below(3);
        Fixture f = random_fixture(rng, n, d);
        Kernel kernel = trial % 2 == 0 ? Kernel::linear : Kernel::rbf;
        double gamma = kernel == Kernel::rbf ? 0.5 : 0.0;
        double C = trial % 3 == 0 ? 0.5 : (trial % 3 == 1 ? 1.0 : 2.0);

        DualSolution sol = solve_dual(f.X, f.y_pm, C, kernel, gamma, 1e-4, 100000, 17);
        REQUIRE(sol.converged);
        double ref = oracle::grid_dual_max(kernel_matrix(f.X, kernel, gamma), f.y_pm, C);
        CAPTURE(trial);
        CHECK(std::abs(sol.objective - ref) <= 1e-4);
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("smo nails the four-point line to grid precision") {
    Matrix X(4, 1);
    X.at(0, 0) = -2.0;
    X.at(1, 0) = -1.0;
    X.at(2, 0) = 1.0;
    X.at(3, 0) = 2.0;
    std::vector<int> y = {-1, -1, +1, +1};

    DualSolution sol = solve_dual(X, y, 1.0, Kernel::linear, 0.0, 1e-6, 100000, 3);
    REQUIRE(sol.converged);
    double ref = oracle::grid_dual_max(kernel_matrix(X, Kernel::linear, 0.0), y, 1.0,
                                       /*levels=*/14, /*steps=*/9);
    CHECK(std::abs(sol.objective - ref) <= 1e-6);
    // Maximum margin between -1 and 1: w = 1, objective = sum a - 1/2 w^2.
    CHECK(sol.objective == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("kkt conditions hold at convergence") {
    Rng rng(809);
    for (int trial = 0; trial < 10; ++trial) {
        Fixture f = blob_fixture(rng, 24, 3, trial % 2 == 0 ? 1.0 : 6.0);
        double tolerance = 1e-3;
        double C = 1.0;
        Kernel kernel = trial % 2 == 0 ? Kernel::linear : Kernel::rbf;
        double gamma = kernel == Kernel::rbf ? 0.3 : 0.0;
        DualSolution sol = solve_dual(f.X, f.y_pm, C, kernel, gamma, tolerance, 100000, 5);
        REQUIRE(sol.converged);

        double balance = 0.0;
        for (std::size_t i = 0; i < f.X.rows; ++i) balance += sol.alpha[i] * f.y_pm[i];
        CHECK(std::abs(balance) <= 1e-6);

        for (std::size_t i = 0; i < f.X.rows; ++i) {
            double margin = f.y_pm[i] * decision(f.X, f.y_pm, sol, kernel, gamma, i);
            CAPTURE(trial);
            CAPTURE(i);
            if (sol.alpha[i] <= 1e-12) {
                CHECK(margin >= 1.0 - tolerance - 1e-9);
            } else if (sol.alpha[i] >= C - 1e-12) {
                CHECK(margin <= 1.0 + tolerance + 1e-9);
            } else {
                CHECK(std::abs(margin - 1.0) <= tolerance + 1e-9);
            }
        }
    }
}

TEST_CASE("the dual objective never falls between outer passes") {
    Rng rng(810);
    for (int trial = 0; trial < 6; ++trial) {
        Fixture f = blob_fixture(rng, 30, 2, 8.0);  // overlapping blobs, many passes
        DualSolution sol = solve_dual(f.X, f.y_pm, 1.0, Kernel::linear, 0.0, 1e-3, 100000, 7);
        REQUIRE(sol.pass_objectives.size() >= 2);
        for (std::size_t k = 1; k < sol.pass_objectives.size(); ++k)
            CHECK(sol.pass_objectives[k] >= sol.pass_objectives[k - 1] - 1e-9);
        CHECK(sol.objective == doctest::Approx(sol.pass_objectives.back()));
    }
}

TEST_CASE("free support vectors sit on the margin") {
    Rng rng(811);
    Fixture f = blob_fixture(rng, 40, 3, 2.0);
    std::vector<int> y01(f.y_pm.size());
    for (std::size_t i = 0; i < y01.size(); ++i) y01[i] = f.y_pm[i] == 1 ? 1 : 0;

    SvmParams params;
    params.tolerance = 1e-5;
    SvmModel model = train_svm(f.X, y01, params);
    REQUIRE(model.converged);

    DualSolution sol = solve_dual(Scaler::fit(f.X).transform(f.X), f.y_pm, params.C,
                                  Kernel::linear, 0.0, params.tolerance, params.max_passes,
                                  params.seed);
    bool found_free = false;
    for (std::size_t i = 0; i < f.X.rows; ++i) {
        if (sol.alpha[i] <= 1e-9 || sol.alpha[i] >= params.C - 1e-9) continue;
        found_free = true;
        CHECK(std::abs(std::abs(svm_score(model, f.X.row(i))) - 1.0) <= 1e-3);
    }
    CHECK(found_free);
}

TEST_CASE("scaler standardizes and flattens constant columns") {
    Matrix X(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        X.at(i, 0) = static_cast<double>(i);  // mean 1.5, var 1.25
        X.at(i, 1) = 9.0;                     // constant
    }
    Scaler scaler = Scaler::fit(X);
    CHECK(scaler.mean[0] == doctest::Approx(1.5));
    CHECK(scaler.stddev[0] == doctest::Approx(std::sqrt(1.25)));
    CHECK(scaler.stddev[1] == 1.0);  // guarded, not zero

    Matrix Z = scaler.transform(X);
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < 4; ++i) mean += Z.at(i, 0);
    mean /= 4.0;
    for (std::size_t i = 0; i < 4; ++i) var += Z.at(i, 0) * Z.at(i, 0);
    CHECK(mean == doctest::Approx(0.0));
    CHECK(var / 4.0 == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 4; ++i) CHECK(Z.at(i, 1) == 0.0);

    std::vector<double> row = scaler.transform_row(X.row(2));
    CHECK(row[0] == doctest::Approx(Z.at(2, 0)));
    CHECK(row[1] == 0.0);
}

TEST_CASE("rbf kernel values") {
    std::vector<double> x = {1.0, 2.0};
    std::vector<double> z = {3.0, -1.0};
    CHECK(rbf_kernel(x, x, 0.7) == 1.0);
    CHECK(rbf_kernel(x, z, 0.1) == doctest::Approx(std::exp(-0.1 * 13.0)));
    CHECK(rbf_kernel(x, z, 0.1) == rbf_kernel(z, x, 0.1));
    CHECK_THROWS(rbf_kernel(x, std::vector<double>{1.0}, 0.1));
}

TEST_CASE("gamma policies resolve against the training shape") {
    Rng rng(812);
    Fixture f = blob_fixture(rng, 25, 4, 1.0);
    std::vector<int> y01(f.y_pm.size());
    for (std::size_t i = 0; i < y01.size(); ++i) y01[i] = f.y_pm[i] == 1 ? 1 : 0;

    SvmParams params;
    params.kernel = Kernel::rbf;

    params.gamma_policy = GammaPolicy::one_over_n_instances;
    CHECK(train_svm(f.X, y01, params).gamma == doctest::Approx(1.0 / 25.0));

    params.gamma_policy = GammaPolicy::one_over_n_features;
    CHECK(train_svm(f.X, y01, params).gamma == doctest::Approx(1.0 / 4.0));

    params.gamma_policy = GammaPolicy::explicit_value;
    params.gamma = 0.37;
    CHECK(train_svm(f.X, y01, params).gamma == doctest::Approx(0.37));

    params.gamma = 0.0;  // explicit policy demands a positive value
    CHECK_THROWS(train_svm(f.X, y01, params));
}

TEST_CASE("linear models materialize a consistent weight vector") {
    Rng rng(813);
    Fixture f = blob_fixture(rng, 30, 3, 3.0);
    std::vector<int> y01(f.y_pm.size());
    for (std::size_t i = 0; i < y01.size(); ++i) y01[i] = f.y_pm[i] == 1 ? 1 : 0;

    SvmModel model = train_svm(f.X, y01, SvmParams{});
    REQUIRE(model.w.size() == 3);
    for (std::size_t i = 0; i < f.X.rows; ++i) {
        std::vector<double> scaled = model.scaler.transform_row(f.X.row(i));
        double manual = model.b;
        for (std::size_t c = 0; c < scaled.size(); ++c) manual += model.w[c] * scaled[c];
        CHECK(svm_score(model, f.X.row(i)) == doctest::Approx(manual));
        CHECK(svm_predict(model, f.X.row(i)) == (svm_score(model, f.X.row(i)) > 0.0 ? 1 : 0));
    }
    // Comfortably separated blobs: training accuracy is perfect.
    for (std::size_t i = 0; i < f.X.rows; ++i)
        CHECK(svm_predict(model, f.X.row(i)) == y01[i]);
}

TEST_CASE("rbf models score through their support vectors") {
    Rng rng(814);
    Fixture f = blob_fixture(rng, 24, 2, 2.0);
    std::vector<int> y01(f.y_pm.size());
    for (std::size_t i = 0; i < y01.size(); ++i) y01[i] = f.y_pm[i] == 1 ? 1 : 0;

    SvmParams params;
    params.kernel = Kernel::rbf;
    params.gamma_policy = GammaPolicy::explicit_value;
    params.gamma = 0.5;
    SvmModel model = train_svm(f.X, y01, params);
    REQUIRE(model.support_vectors.rows > 0);
    REQUIRE(model.support_vectors.rows == model.dual_coef.size());
    for (std::size_t i = 0; i < f.X.rows; ++i)
        CHECK(svm_predict(model, f.X.row(i)) == y01[i]);
}

TEST_CASE("svm training validates its inputs") {
    Matrix X(3, 1);
    X.at(1, 0) = 1.0;
    X.at(2, 0) = 2.0;
    CHECK_THROWS(train_svm(X, std::vector<int>{1, 1, 1}, SvmParams{}));  // one class
    CHECK_THROWS(train_svm(X, std::vector<int>{0, 1}, SvmParams{}));     // size mismatch

    SvmParams bad;
    bad.C = -1.0;
    CHECK_THROWS(train_svm(X, std::vector<int>{0, 1, 1}, bad));
    bad = SvmParams{};
    bad.tolerance = 0.0;
    CHECK_THROWS(train_svm(X, std::vector<int>{0, 1, 1}, bad));

    SvmModel model = train_svm(X, std::vector<int>{0, 1, 1}, SvmParams{});
    CHECK_THROWS(svm_score(model, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("training twice gives the identical model") {
    Rng rng(815);
    Fixture f = blob_fixture(rng, 36, 3, 6.0);
    std::vector<int> y01(f.y_pm.size());
    for (std::size_t i = 0; i < y01.size(); ++i) y01[i] = f.y_pm[i] == 1 ? 1 : 0;

    SvmParams params;
    params.seed = 99;
    SvmModel a = train_svm(f.X, y01, params);
    SvmModel b = train_svm(f.X, y01, params);
    CHECK(a.w == b.w);
    CHECK(a.b == b.b);
    CHECK(a.converged == b.converged);
}
