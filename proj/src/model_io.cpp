#include "attrition/model_io.hpp"

#include <stdexcept>
#include <string>

namespace attrition {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("model_io: " + what);
}

void check_header(const json& j, const char* kind) {
    if (!j.is_object()) fail("model file is not a JSON object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        fail("missing format_version");
    int version = j["format_version"].get<int>();
    if (version != model_format_version)
        fail("unsupported format_version " + std::to_string(version));
    if (!j.contains("model") || j["model"] != kind)
        fail(std::string("expected a '") + kind + "' model file");
}

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"values", m.values}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m;
    m.rows = j.at("rows").get<std::size_t>();
    m.cols = j.at("cols").get<std::size_t>();
    m.values = j.at("values").get<std::vector<double>>();
    if (m.values.size() != m.rows * m.cols) fail("matrix values do not match rows*cols");
    return m;
}

json stump_to_json(const Stump& s) {
    return {{"feature", s.feature},     {"threshold", s.threshold},
            {"polarity", s.polarity},   {"vote_left", s.vote_left},
            {"vote_right", s.vote_right}, {"degenerate", s.degenerate}};
}

Stump stump_from_json(const json& j) {
    Stump s;
    s.feature = j.at("feature").get<std::size_t>();
    s.threshold = j.at("threshold").get<double>();
    s.polarity = j.at("polarity").get<int>();
    s.vote_left = j.at("vote_left").get<int>();
    s.vote_right = j.at("vote_right").get<int>();
    s.degenerate = j.at("degenerate").get<bool>();
    if (s.polarity != 1 && s.polarity != -1) fail("stump polarity must be +1 or -1");
    if ((s.vote_left != 0 && s.vote_left != 1) || (s.vote_right != 0 && s.vote_right != 1))
        fail("stump votes must be 0 or 1");
    return s;
}

}  // namespace

json adaboost_to_json(const AdaBoostModel& model) {
    json stumps = json::array();
    for (const Stump& s : model.stumps) stumps.push_back(stump_to_json(s));
    return {{"format_version", model_format_version},
            {"model", "adaboost"},
            {"n_features", model.n_features},
            {"n_estimators", model.params.n_estimators},
            {"learning_rate", model.params.learning_rate},
            {"seed", model.params.seed},
            {"stumps", std::move(stumps)},
            {"alphas", model.alphas}};
}

AdaBoostModel adaboost_from_json(const json& j) {
    check_header(j, "adaboost");
    try {
        AdaBoostModel model;
        model.n_features = j.at("n_features").get<std::size_t>();
        model.params.n_estimators = j.at("n_estimators").get<std::size_t>();
        model.params.learning_rate = j.at("learning_rate").get<double>();
        model.params.seed = j.at("seed").get<std::uint64_t>();
        for (const json& s : j.at("stumps")) model.stumps.push_back(stump_from_json(s));
        model.alphas = j.at("alphas").get<std::vector<double>>();
        if (model.alphas.size() != model.stumps.size())
            fail("stump and alpha counts differ");
        return model;
    } catch (const json::exception& e) {
        fail(std::string("malformed adaboost model: ") + e.what());
    }
}

json forest_to_json(const ForestModel& model) {
    json trees = json::array();
    for (const Tree& tree : model.trees) {
        json nodes = json::array();
        for (const TreeNode& node : tree.nodes) {
            // Leaves serialize children as -1; indices are otherwise exact.
            nodes.push_back({{"feature", node.feature},
                             {"threshold", node.threshold},
                             {"left", node.is_leaf() ? -1 : static_cast<long long>(node.left)},
                             {"right", node.is_leaf() ? -1 : static_cast<long long>(node.right)},
                             {"label", node.label},
                             {"class_weight", node.class_weight}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    return {{"format_version", model_format_version},
            {"model", "random_forest"},
            {"n_features", model.n_features},
            {"tree_seeds", model.tree_seeds},
            {"trees", std::move(trees)}};
}

ForestModel forest_from_json(const json& j) {
    check_header(j, "random_forest");
    try {
        ForestModel model;
        model.n_features = j.at("n_features").get<std::size_t>();
        model.tree_seeds = j.at("tree_seeds").get<std::vector<std::uint64_t>>();
        for (const json& jt : j.at("trees")) {
            Tree tree;
            tree.n_features = model.n_features;
            for (const json& jn : jt.at("nodes")) {
                TreeNode node;
                node.feature = jn.at("feature").get<std::size_t>();
                node.threshold = jn.at("threshold").get<double>();
                long long left = jn.at("left").get<long long>();
                long long right = jn.at("right").get<long long>();
                if ((left < 0) != (right < 0)) fail("tree node with a single child");
                node.left = left < 0 ? TreeNode::npos : static_cast<std::size_t>(left);
                node.right = right < 0 ? TreeNode::npos : static_cast<std::size_t>(right);
                node.label = jn.at("label").get<int>();
                auto weight = jn.at("class_weight").get<std::vector<double>>();
                if (weight.size() != 2) fail("tree node class_weight must have two entries");
                node.class_weight = {weight[0], weight[1]};
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty()) fail("tree without nodes");
            for (const TreeNode& node : tree.nodes)
                if (!node.is_leaf() &&
                    (node.left >= tree.nodes.size() || node.right >= tree.nodes.size()))
                    fail("tree child index out of range");
            model.trees.push_back(std::move(tree));
        }
        if (model.trees.empty()) fail("forest without trees");
        return model;
    } catch (const json::exception& e) {
        fail(std::string("malformed random_forest model: ") + e.what());
    }
}

json svm_to_json(const SvmModel& model) {
    return {{"format_version", model_format_version},
            {"model", "svm"},
            {"kernel", model.kernel == Kernel::linear ? "linear" : "rbf"},
            {"gamma", model.gamma},
            {"C", model.C},
            {"w", model.w},
            {"b", model.b},
            {"support_vectors", matrix_to_json(model.support_vectors)},
            {"dual_coef", model.dual_coef},
            {"scaler", {{"mean", model.scaler.mean}, {"stddev", model.scaler.stddev}}},
            {"converged", model.converged},
            {"n_features", model.n_features}};
}

SvmModel svm_from_json(const json& j) {
    check_header(j, "svm");
    try {
        SvmModel model;
        std::string kernel = j.at("kernel").get<std::string>();
        if (kernel == "linear")
            model.kernel = Kernel::linear;
        else if (kernel == "rbf")
            model.kernel = Kernel::rbf;
        else
            fail("unknown kernel '" + kernel + "'");
        model.gamma = j.at("gamma").get<double>();
        model.C = j.at("C").get<double>();
        model.w = j.at("w").get<std::vector<double>>();
        model.b = j.at("b").get<double>();
        model.support_vectors = matrix_from_json(j.at("support_vectors"));
        model.dual_coef = j.at("dual_coef").get<std::vector<double>>();
        model.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
        model.scaler.stddev = j.at("scaler").at("stddev").get<std::vector<double>>();
        model.converged = j.at("converged").get<bool>();
        model.n_features = j.at("n_features").get<std::size_t>();
        if (model.scaler.mean.size() != model.n_features ||
            model.scaler.stddev.size() != model.n_features)
            fail("scaler dimensions do not match n_features");
        if (model.kernel == Kernel::linear && model.w.size() != model.n_features)
            fail("weight vector does not match n_features");
        if (model.dual_coef.size() != model.support_vectors.rows)
            fail("dual_coef does not match support vector count");
        return model;
    } catch (const json::exception& e) {
        fail(std::string("malformed svm model: ") + e.what());
    }
}

json model_to_json(const AnyModel& model) {
    struct Visitor {
        json operator()(const AdaBoostModel& m) const { return adaboost_to_json(m); }
        json operator()(const ForestModel& m) const { return forest_to_json(m); }
        json operator()(const SvmModel& m) const { return svm_to_json(m); }
    };
    return std::visit(Visitor{}, model);
}

AnyModel model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
        fail("model file lacks a 'model' tag");
    std::string kind = j["model"].get<std::string>();
    if (kind == "adaboost") return adaboost_from_json(j);
    if (kind == "random_forest") return forest_from_json(j);
    if (kind == "svm") return svm_from_json(j);
    fail("unknown model kind '" + kind + "'");
}

}  // namespace attrition
