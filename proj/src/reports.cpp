#include "attrition/reports.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attrition {

namespace {

std::string strf(const char* fmt, ...) {
    char buffer[256];
    va_list args;
    va_start(args, fmt);
    int written = std::vsnprintf(buffer, sizeof buffer, fmt, args);
    va_end(args);
    if (written < 0 || written >= static_cast<int>(sizeof buffer))
        throw std::runtime_error("reports: formatted value does not fit");
    return std::string(buffer, static_cast<std::size_t>(written));
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Blue-white-red ramp over [-1, 1]; 0 maps to white.
std::string ramp_color(double r) {
    if (r < -1.0) r = -1.0;
    if (r > 1.0) r = 1.0;
    const int blue[3] = {59, 76, 192};
    const int white[3] = {255, 255, 255};
    const int red[3] = {180, 4, 38};
    const int* lo = r < 0.0 ? blue : white;
    const int* hi = r < 0.0 ? white : red;
    double t = r < 0.0 ? r + 1.0 : r;
    int rgb[3];
    for (int k = 0; k < 3; ++k)
        rgb[k] = static_cast<int>(std::lround(lo[k] + t * (hi[k] - lo[k])));
    return strf("rgb(%d,%d,%d)", rgb[0], rgb[1], rgb[2]);
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

}  // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("reports: cannot open '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("reports: failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("reports: cannot move output into '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("reports: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("reports: failed reading '" + path.string() + "'");
    return buffer.str();
}

std::string benchmark_csv(const BenchmarkTable& table) {
    std::string out = "iteration";
    for (const std::string& name : table.model_names) out += "," + csv_quote(name);
    out += ",baseline\n";

    std::vector<double> sums(table.model_names.size() + 1, 0.0);
    std::vector<std::size_t> counts(table.model_names.size() + 1, 0);
    for (const BenchmarkIteration& iteration : table.iterations) {
        out += std::to_string(iteration.index);
        for (std::size_t m = 0; m < iteration.reports.size(); ++m) {
            const EvalReport& report = iteration.reports[m];
            if (report.failed()) {
                out += ",ERROR";
            } else {
                out += strf(",%.4f", report.accuracy);
                sums[m] += report.accuracy;
                counts[m] += 1;
            }
        }
        if (iteration.baseline.failed()) {
            out += ",ERROR";
        } else {
            out += strf(",%.4f", iteration.baseline.accuracy);
            sums.back() += iteration.baseline.accuracy;
            counts.back() += 1;
        }
        out += '\n';
    }

    out += "mean";
    for (std::size_t m = 0; m < sums.size(); ++m)
        out += counts[m] > 0 ? strf(",%.4f", sums[m] / static_cast<double>(counts[m])) : ",NA";
    out += '\n';
    return out;
}

nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json j{{"model", report.model},
                     {"split_seed", report.split_seed},
                     {"test_fraction", report.test_fraction}};
    if (report.failed()) {
        j["error"] = report.error;
        return j;
    }
    j["accuracy"] = report.accuracy;
    j["auc"] = report.auc;
    j["confusion"] = {{"tp", report.confusion.tp},
                      {"fp", report.confusion.fp},
                      {"tn", report.confusion.tn},
                      {"fn", report.confusion.fn}};
    nlohmann::json fpr = nlohmann::json::array(), tpr = nlohmann::json::array(),
                   thresholds = nlohmann::json::array();
    for (std::size_t i = 0; i < report.roc.points.size(); ++i) {
        fpr.push_back(report.roc.points[i].fpr);
        tpr.push_back(report.roc.points[i].tpr);
        thresholds.push_back(report.roc.thresholds[i]);  // +inf serializes as null
    }
    j["roc"] = {{"fpr", std::move(fpr)}, {"tpr", std::move(tpr)},
                {"thresholds", std::move(thresholds)}};
    return j;
}

nlohmann::json benchmark_to_json(const BenchmarkTable& table) {
    nlohmann::json iterations = nlohmann::json::array();
    for (const BenchmarkIteration& iteration : table.iterations) {
        nlohmann::json reports = nlohmann::json::array();
        for (const EvalReport& report : iteration.reports)
            reports.push_back(report_to_json(report));
        iterations.push_back({{"index", iteration.index},
                              {"split_seed", iteration.split_seed},
                              {"reports", std::move(reports)},
                              {"baseline", report_to_json(iteration.baseline)}});
    }
    return {{"master_seed", table.master_seed},
            {"test_fraction", table.test_fraction},
            {"models", table.model_names},
            {"iterations", std::move(iterations)}};
}

std::string roc_csv(const RocCurve& curve) {
    std::string out = "fpr,tpr,threshold\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
        out += strf("%.6f,%.6f,%.9g\n", curve.points[i].fpr, curve.points[i].tpr,
                    curve.thresholds[i]);
    return out;
}

std::string roc_overlay_svg(const std::vector<RocSeries>& series) {
    const double width = 640, height = 520;
    const double left = 70, right = 20, top = 20, bottom = 60;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto px = [&](double fpr) { return left + fpr * plot_w; };
    auto py = [&](double tpr) { return top + (1.0 - tpr) * plot_h; };

    std::string svg = strf(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
        "viewBox=\"0 0 %g %g\" font-family=\"sans-serif\">\n",
        width, height, width, height);
    svg += strf("<rect x=\"0\" y=\"0\" width=\"%g\" height=\"%g\" fill=\"white\"/>\n", width,
                height);

    for (int tick = 0; tick <= 5; ++tick) {
        double v = tick / 5.0;
        svg += strf("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                    "stroke=\"#dddddd\"/>\n",
                    px(v), py(0), px(v), py(1));
        svg += strf("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                    "stroke=\"#dddddd\"/>\n",
                    px(0), py(v), px(1), py(v));
        svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                    "text-anchor=\"middle\">%.1f</text>\n",
                    px(v), py(0) + 18, v);
        svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                    "text-anchor=\"end\">%.1f</text>\n",
                    px(0) - 6, py(v) + 4, v);
    }
    svg += strf("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                left, top, plot_w, plot_h);
    svg += strf("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#888888\" "
                "stroke-dasharray=\"6,4\"/>\n",
                px(0), py(0), px(1), py(1));
    svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\">"
                "False positive rate</text>\n",
                left + plot_w / 2, height - 16);
    svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 %.1f %.1f)\">True positive rate</text>\n",
                18.0, top + plot_h / 2, 18.0, top + plot_h / 2);

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::string points;
        for (const RocPoint& p : series[s].curve.points)
            points += strf("%.2f,%.2f ", px(p.fpr), py(p.tpr));
        svg += std::string("<polyline fill=\"none\" stroke=\"") + color +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        double ly = py(0) - 14.0 * static_cast<double>(series.size() - s);
        double lx = px(1) - 200;
        svg += strf("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                    "stroke-width=\"2\"/>\n",
                    lx, ly - 4, lx + 24, ly - 4, color);
        svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%s</text>\n", lx + 30, ly,
                    xml_escape(series[s].name).c_str());
    }
    svg += "</svg>\n";
    return svg;
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
    std::string out = "feature";
    for (const std::string& name : matrix.feature_names) out += "," + csv_quote(name);
    out += '\n';
    for (std::size_t i = 0; i < matrix.feature_names.size(); ++i) {
        out += csv_quote(matrix.feature_names[i]);
        for (std::size_t j = 0; j < matrix.feature_names.size(); ++j)
            out += strf(",%.6f", matrix.values.at(i, j));
        out += '\n';
    }
    return out;
}

std::string correlation_svg(const CorrelationMatrix& matrix) {
    const std::size_t d = matrix.feature_names.size();
    const double cell = 18, label = 170, legend = 60;
    const double width = label + cell * static_cast<double>(d) + legend;
    const double height = label + cell * static_cast<double>(d) + 20;

    std::string svg = strf(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
        "viewBox=\"0 0 %g %g\" font-family=\"sans-serif\">\n",
        width, height, width, height);
    svg += strf("<rect x=\"0\" y=\"0\" width=\"%g\" height=\"%g\" fill=\"white\"/>\n", width,
                height);
    for (std::size_t i = 0; i < d; ++i) {
        double y = label + cell * static_cast<double>(i);
        svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" text-anchor=\"end\">%s"
                    "</text>\n",
                    label - 6, y + cell * 0.7, xml_escape(matrix.feature_names[i]).c_str());
        double x = label + cell * static_cast<double>(i);
        svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" text-anchor=\"start\" "
                    "transform=\"rotate(-90 %.1f %.1f)\">%s</text>\n",
                    x + cell * 0.7, label - 6, x + cell * 0.7, label - 6,
                    xml_escape(matrix.feature_names[i]).c_str());
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double x = label + cell * static_cast<double>(j);
            double y = label + cell * static_cast<double>(i);
            svg += strf("<rect x=\"%.1f\" y=\"%.1f\" width=\"%g\" height=\"%g\" fill=\"%s\" "
                        "stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
                        x, y, cell, cell, ramp_color(matrix.values.at(i, j)).c_str());
        }
    // Color bar from +1 down to -1.
    double bar_x = label + cell * static_cast<double>(d) + 16;
    double bar_h = cell * static_cast<double>(d);
    const int steps = 64;
    for (int s = 0; s < steps; ++s) {
        double value = 1.0 - 2.0 * (s + 0.5) / steps;
        svg += strf("<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"%.2f\" fill=\"%s\"/>\n",
                    bar_x, label + bar_h * s / steps, bar_h / steps + 0.5,
                    ramp_color(value).c_str());
    }
    svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\">+1</text>\n", bar_x + 18,
                label + 8);
    svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\">0</text>\n", bar_x + 18,
                label + bar_h / 2 + 4);
    svg += strf("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\">-1</text>\n", bar_x + 18,
                label + bar_h);
    svg += "</svg>\n";
    return svg;
}

std::string histogram_csv(const Histogram2D& hist) {
    std::string out = csv_quote(hist.x_feature + "\\" + hist.y_feature);
    for (const std::string& name : hist.y_labels) out += "," + csv_quote(name);
    out += '\n';
    for (std::size_t i = 0; i < hist.x_labels.size(); ++i) {
        out += csv_quote(hist.x_labels[i]);
        for (std::size_t j = 0; j < hist.y_labels.size(); ++j)
            out += "," + std::to_string(hist.counts[i][j]);
        out += '\n';
    }
    return out;
}

std::string scatter_csv(const Scatter3D& scatter) {
    std::string out;
    for (std::size_t a = 0; a < scatter.axes.size(); ++a) {
        if (a > 0) out += ',';
        out += csv_quote(scatter.axes[a]);
    }
    out += ",attrition\n";
    for (std::size_t i = 0; i < scatter.points.size(); ++i) {
        const auto& p = scatter.points[i];
        out += strf("%.9g,%.9g,%.9g,%d\n", p[0], p[1], p[2], scatter.point_class[i]);
    }
    return out;
}

nlohmann::json dataset_summary(const Dataset& data) {
    std::size_t positives = 0;
    for (int label : data.labels) positives += label == 1;
    std::size_t negatives = data.n_rows() - positives;
    double majority = data.n_rows() == 0
                          ? 0.0
                          : static_cast<double>(std::max(positives, negatives)) /
                                static_cast<double>(data.n_rows());
    return {{"rows", data.n_rows()},
            {"features", data.n_features()},
            {"label", data.label_name},
            {"label_counts", {{"No", negatives}, {"Yes", positives}}},
            {"encoding", data.policy == EncodePolicy::one_hot ? "one_hot" : "integer_codes"},
            {"dropped", data.dropped},
            {"majority_accuracy", majority},
            {"feature_names", data.feature_names}};
}

}  // namespace attrition
