#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "attrition/benchmark.hpp"
#include "attrition/dataset.hpp"
#include "attrition/metrics.hpp"
#include "attrition/stats.hpp"

namespace attrition {

/// Writes to a sibling temp file and renames it into place, so a failed run
/// never leaves a truncated artifact. Creates missing parent directories.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

/// Accuracy table in the benchmark layout: one row per iteration, one
/// column per model plus the majority-class baseline, 4-decimal cells, and
/// a final per-model mean row. Failed cells render as ERROR.
std::string benchmark_csv(const BenchmarkTable& table);

nlohmann::json benchmark_to_json(const BenchmarkTable& table);
nlohmann::json report_to_json(const EvalReport& report);

/// fpr,tpr,threshold rows, one per sweep step.
std::string roc_csv(const RocCurve& curve);

struct RocSeries {
    std::string name;  // legend entry
    RocCurve curve;
};

/// Overlay plot of several ROC curves with the chance diagonal.
std::string roc_overlay_svg(const std::vector<RocSeries>& series);

/// Square grid with feature names on both axes; degenerate entries are 0.
std::string correlation_csv(const CorrelationMatrix& matrix);

/// Heatmap with a blue-white-red ramp over [-1, 1].
std::string correlation_svg(const CorrelationMatrix& matrix);

/// Count grid: y-bin labels across the header, one row per x bin.
std::string histogram_csv(const Histogram2D& hist);

/// One row per point: the three axis values plus the attrition label.
std::string scatter_csv(const Scatter3D& scatter);

/// Row/feature counts, encoding, label balance, and the majority-class
/// accuracy floor.
nlohmann::json dataset_summary(const Dataset& data);

}  // namespace attrition
