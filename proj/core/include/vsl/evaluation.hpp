#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vsl/metrics.hpp"

namespace vsl {

enum class Metric { anls, relaxed_accuracy, accuracy, f1, bleu };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

struct EvalOptions {
  double anls_threshold = 0.5;
  double relaxed_tolerance = 0.05;
  int bleu_max_n = 4;
};

/// Scores a prediction JSONL against a gold JSONL.
///
/// Predictions are {"id", "prediction"}; key-value F1 additionally accepts
/// {"id", "pairs": [[category, value], ...]}. Gold lines are
/// {"id", "answers": [...]} or {"id", "pairs": [...]}. The id sets must match
/// exactly, otherwise DataError lists the missing and unexpected ids.
/// Returns one report, or one per BLEU order.
std::vector<MetricReport> run_eval(Metric metric, const std::filesystem::path& pred_path,
                                   const std::filesystem::path& gold_path,
                                   const EvalOptions& options = {});

/// {"metric", "value", "count"}, or an array of those for several reports.
std::string report_json(const std::vector<MetricReport>& reports);

}  // namespace vsl
