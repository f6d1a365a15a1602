#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recbench/metrics/evaluate.hpp"

namespace recbench {

/// `model,dataset,metric,cutoff,value,n_users`; values with %.6f.
std::string format_report_csv(std::span<const EvalReport> reports);

/// Published numbers of a model we did not run (e.g. a neural model's
/// reported table), keyed by (metric, cutoff).
struct ExternalResult {
  std::string model;
  std::map<std::pair<Metric, std::size_t>, double> values;
};

/// Reads `model,metric,cutoff,value` rows (header required; a full
/// format_report_csv file is accepted too). Rows of one model are merged.
std::vector<ExternalResult> parse_comparison_csv(std::string_view text,
                                                 const std::string& source = "<memory>");

/// Markdown results table: one row per report, one column per (metric,
/// cutoff) in `spec` order, three decimals. External rows follow the
/// baselines.
///
/// Bold marking: with external rows, a baseline cell is bold when its printed
/// value is >= every external value in that column, and an external cell is
/// bold when it beats every baseline. Without external rows the column best
/// is bold.
std::string format_report_markdown(std::span<const EvalReport> reports, const MetricSpec& spec,
                                   std::span<const ExternalResult> external = {},
                                   std::string_view title = {});

}  // namespace recbench
