#include "attrition/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "attrition/rng.hpp"

namespace attrition {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

Scaler Scaler::fit(const Matrix& X) {
    if (X.rows == 0) throw std::runtime_error("svm: cannot fit a scaler on zero rows");
    Scaler scaler;
    scaler.mean.assign(X.cols, 0.0);
    scaler.stddev.assign(X.cols, 0.0);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) scaler.mean[j] += X.at(i, j);
    for (double& m : scaler.mean) m /= static_cast<double>(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            double centered = X.at(i, j) - scaler.mean[j];
            scaler.stddev[j] += centered * centered;
        }
    for (double& s : scaler.stddev) {
        s = std::sqrt(s / static_cast<double>(X.rows));
        if (s == 0.0) s = 1.0;
    }
    return scaler;
}

Matrix Scaler::transform(const Matrix& X) const {
    if (X.cols != mean.size()) throw std::runtime_error("svm: scaler dimension mismatch");
    Matrix out = X;
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j)
            out.at(i, j) = (out.at(i, j) - mean[j]) / stddev[j];
    return out;
}

std::vector<double> Scaler::transform_row(std::span<const double> x) const {
    if (x.size() != mean.size()) throw std::runtime_error("svm: scaler dimension mismatch");
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / stddev[j];
    return out;
}

double rbf_kernel(std::span<const double> x, std::span<const double> z, double gamma) {
    if (x.size() != z.size()) throw std::runtime_error("svm: kernel rows differ in length");
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double diff = x[i] - z[i];
        sq += diff * diff;
    }
    return std::exp(-gamma * sq);
}

namespace {

/// Two-variable SMO state over a fixed training set.
class SmoSolver {
public:
    SmoSolver(const Matrix& X, const std::vector<int>& y, double C, Kernel kernel, double gamma,
              double tolerance, std::uint64_t seed)
        : X_(X),
          y_(y),
          C_(C),
          kernel_(kernel),
          gamma_(gamma),
          tol_(tolerance),
          rng_(seed),
          n_(X.rows),
          alpha_(X.rows, 0.0),
          error_(X.rows),
          w_(kernel == Kernel::linear ? X.cols : 0, 0.0) {
        // With all alphas zero the decision value is b = 0, so E_i = -y_i.
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -static_cast<double>(y_[i]);
    }

    DualSolution run(std::size_t max_passes) {
        DualSolution out;
        bool examine_all = true;
        while (out.passes < max_passes) {
            ++out.passes;
            std::size_t changed = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!examine_all && !is_free(alpha_[i])) continue;
                changed += examine(i);
            }
            out.pass_objectives.push_back(objective());
            if (examine_all) {
                if (changed == 0) {
                    out.converged = true;
                    break;
                }
                examine_all = false;
            } else if (changed == 0) {
                examine_all = true;
            }
        }
        out.alpha = alpha_;
        out.b = b_;
        out.objective = objective();
        return out;
    }

private:
    bool is_free(double a) const { return a > 0.0 && a < C_; }

    double kernel_value(std::size_t i, std::size_t j) const {
        if (kernel_ == Kernel::linear) return dot(X_.row(i), X_.row(j));
        return rbf_kernel(X_.row(i), X_.row(j), gamma_);
    }

    double objective() const {
        double sum = 0.0;
        for (double a : alpha_) sum += a;
        if (kernel_ == Kernel::linear) return sum - 0.5 * dot(w_, w_);
        double quad = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (alpha_[j] == 0.0) continue;
                quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * kernel_value(i, j);
            }
        }
        return sum - 0.5 * quad;
    }

    bool examine(std::size_t i2) {
        double e2 = error_[i2];
        double r2 = e2 * y_[i2];
        bool violates = (r2 < -tol_ && alpha_[i2] < C_) || (r2 > tol_ && alpha_[i2] > 0.0);
        if (!violates) return false;

        // First try the partner with the largest |E1 - E2| among free
        // alphas, then every free alpha from a random start, then everything.
        std::size_t best = n_;
        double best_gap = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!is_free(alpha_[i])) continue;
            double gap = std::abs(error_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && step(best, i2)) return true;

        std::size_t start = static_cast<std::size_t>(rng_.below(n_));
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t i1 = (start + k) % n_;
            if (is_free(alpha_[i1]) && step(i1, i2)) return true;
        }
        start = static_cast<std::size_t>(rng_.below(n_));
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t i1 = (start + k) % n_;
            if (step(i1, i2)) return true;
        }
        return false;
    }

    bool step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        double alph1 = alpha_[i1], alph2 = alpha_[i2];
        double y1 = y_[i1], y2 = y_[i2];
        double e1 = error_[i1], e2 = error_[i2];
        double s = y1 * y2;

        double low, high;
        if (y_[i1] != y_[i2]) {
            low = std::max(0.0, alph2 - alph1);
            high = std::min(C_, C_ + alph2 - alph1);
        } else {
            low = std::max(0.0, alph1 + alph2 - C_);
            high = std::min(C_, alph1 + alph2);
        }
        if (low >= high) return false;

        double k11 = kernel_value(i1, i1);
        double k12 = kernel_value(i1, i2);
        double k22 = kernel_value(i2, i2);
        double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 0.0) {
            a2 = alph2 + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, low, high);
        } else {
            // Flat or concave along the constraint line: the maximum sits at
            // an endpoint. Evaluate the objective change there directly.
            auto gain = [&](double cand) {
                double d2 = cand - alph2;
                double d1 = -s * d2;
                double g1 = y1 * (e1 + y1 - b_);
                double g2 = y2 * (e2 + y2 - b_);
                return d1 + d2 - d1 * g1 - d2 * g2 -
                       0.5 * (d1 * d1 * k11 + d2 * d2 * k22) - d1 * d2 * s * k12;
            };
            double gain_low = gain(low), gain_high = gain(high);
            if (gain_low > gain_high + 1e-12)
                a2 = low;
            else if (gain_high > gain_low + 1e-12)
                a2 = high;
            else
                return false;
        }
        if (std::abs(a2 - alph2) < 1e-12 * (a2 + alph2 + 1e-12)) return false;

        double a1 = alph1 + s * (alph2 - a2);
        if (a1 < 0.0) a1 = 0.0;
        if (a1 > C_) a1 = C_;

        double d1 = a1 - alph1, d2 = a2 - alph2;
        double b1 = b_ - e1 - y1 * d1 * k11 - y2 * d2 * k12;
        double b2 = b_ - e2 - y1 * d1 * k12 - y2 * d2 * k22;
        double b_new;
        if (is_free(a1))
            b_new = b1;
        else if (is_free(a2))
            b_new = b2;
        else
            b_new = (b1 + b2) / 2.0;
        double delta_b = b_new - b_;

        alpha_[i1] = a1;
        alpha_[i2] = a2;
        b_ = b_new;
        if (kernel_ == Kernel::linear) {
            auto x1 = X_.row(i1), x2 = X_.row(i2);
            for (std::size_t j = 0; j < w_.size(); ++j)
                w_[j] += y1 * d1 * x1[j] + y2 * d2 * x2[j];
        }
        for (std::size_t i = 0; i < n_; ++i)
            error_[i] += y1 * d1 * kernel_value(i1, i) + y2 * d2 * kernel_value(i2, i) + delta_b;
        return true;
    }

    const Matrix& X_;
    const std::vector<int>& y_;
    double C_;
    Kernel kernel_;
    double gamma_;
    double tol_;
    Rng rng_;
    std::size_t n_;
    std::vector<double> alpha_;
    std::vector<double> error_;
    std::vector<double> w_;
    double b_ = 0.0;
};

double resolve_gamma(const SvmParams& params, std::size_t n_rows, std::size_t n_cols) {
    switch (params.gamma_policy) {
        case GammaPolicy::one_over_n_instances:
            return 1.0 / static_cast<double>(n_rows);
        case GammaPolicy::one_over_n_features:
            return 1.0 / static_cast<double>(n_cols);
        case GammaPolicy::explicit_value:
            if (!(params.gamma > 0.0))
                throw std::runtime_error("svm: explicit gamma must be positive");
            return params.gamma;
    }
    return params.gamma;
}

}  // namespace

DualSolution solve_dual(const Matrix& X, const std::vector<int>& y_pm, double C, Kernel kernel,
                        double gamma, double tolerance, std::size_t max_passes,
                        std::uint64_t seed) {
    if (X.rows == 0) throw std::runtime_error("svm: empty training matrix");
    if (X.rows != y_pm.size())
        throw std::runtime_error("svm: label count does not match row count");
    for (int v : y_pm)
        if (v != -1 && v != 1) throw std::runtime_error("svm: dual labels must be -1 or +1");
    if (!(C > 0.0)) throw std::runtime_error("svm: C must be positive");
    if (!(tolerance > 0.0)) throw std::runtime_error("svm: tolerance must be positive");
    if (max_passes == 0) throw std::runtime_error("svm: max_passes must be at least 1");

    SmoSolver solver(X, y_pm, C, kernel, gamma, tolerance, seed);
    return solver.run(max_passes);
}

SvmModel train_svm(const Matrix& X, const std::vector<int>& y, const SvmParams& params) {
    if (X.rows != y.size()) throw std::runtime_error("svm: label count does not match row count");
    bool saw[2] = {false, false};
    for (int v : y) {
        if (v != 0 && v != 1) throw std::runtime_error("svm: labels must be 0 or 1");
        saw[v] = true;
    }
    if (!saw[0] || !saw[1])
        throw std::runtime_error("svm: training labels contain a single class");

    SvmModel model;
    model.kernel = params.kernel;
    model.C = params.C;
    model.n_features = X.cols;
    model.gamma = resolve_gamma(params, X.rows, X.cols);
    model.scaler = Scaler::fit(X);

    Matrix scaled = model.scaler.transform(X);
    std::vector<int> y_pm(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_pm[i] = y[i] == 1 ? 1 : -1;

    DualSolution dual = solve_dual(scaled, y_pm, params.C, params.kernel, model.gamma,
                                   params.tolerance, params.max_passes, params.seed);
    model.b = dual.b;
    model.converged = dual.converged;

    if (params.kernel == Kernel::linear) {
        model.w.assign(X.cols, 0.0);
        for (std::size_t i = 0; i < scaled.rows; ++i) {
            if (dual.alpha[i] == 0.0) continue;
            auto row = scaled.row(i);
            double coef = dual.alpha[i] * y_pm[i];
            for (std::size_t j = 0; j < X.cols; ++j) model.w[j] += coef * row[j];
        }
    } else {
        std::size_t n_sv = 0;
        for (double a : dual.alpha) n_sv += a > 0.0;
        model.support_vectors = Matrix(n_sv, X.cols);
        model.dual_coef.reserve(n_sv);
        std::size_t at = 0;
        for (std::size_t i = 0; i < scaled.rows; ++i) {
            if (dual.alpha[i] == 0.0) continue;
            auto row = scaled.row(i);
            std::copy(row.begin(), row.end(), model.support_vectors.values.begin() + at * X.cols);
            model.dual_coef.push_back(dual.alpha[i] * y_pm[i]);
            ++at;
        }
    }
    return model;
}

SvmModel train_svm(const Dataset& data, const SvmParams& params) {
    return train_svm(data.features, data.labels, params);
}

double svm_score(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.n_features)
        throw std::runtime_error("svm: input row has " + std::to_string(x.size()) +
                                 " features, model expects " + std::to_string(model.n_features));
    std::vector<double> scaled = model.scaler.transform_row(x);
    if (model.kernel == Kernel::linear) return dot(model.w, scaled) + model.b;
    double sum = model.b;
    for (std::size_t i = 0; i < model.support_vectors.rows; ++i)
        sum += model.dual_coef[i] * rbf_kernel(model.support_vectors.row(i), scaled, model.gamma);
    return sum;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
    return svm_score(model, x) > 0.0 ? 1 : 0;
}

}  // namespace attrition
