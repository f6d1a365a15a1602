#include "recbench/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "recbench/common/error.hpp"

namespace recbench {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double rounded(double v) { return std::round(v * 1000.0) / 1000.0; }

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    std::string field(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(std::move(field));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_report_csv(std::span<const EvalReport> reports) {
  std::string out = "model,dataset,metric,cutoff,value,n_users\n";
  for (const auto& r : reports) {
    for (const auto& v : r.values) {
      out += r.model + "," + r.dataset + "," + std::string(to_string(v.metric)) + "," +
             std::to_string(v.cutoff) + "," + fixed(v.value, 6) + "," +
             std::to_string(r.n_evaluated_users) + "\n";
    }
  }
  return out;
}

std::vector<ExternalResult> parse_comparison_csv(std::string_view text, const std::string& source) {
  std::vector<ExternalResult> results;
  std::optional<std::size_t> col_model, col_metric, col_cutoff, col_value;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line == "\r") continue;
    const auto fields = split_csv(line);
    if (!header_seen) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] == "model") col_model = c;
        if (fields[c] == "metric") col_metric = c;
        if (fields[c] == "cutoff") col_cutoff = c;
        if (fields[c] == "value") col_value = c;
      }
      if (!col_model || !col_metric || !col_cutoff || !col_value) {
        throw ParseError(source, line_no, "header must name model, metric, cutoff and value");
      }
      header_seen = true;
      continue;
    }
    const std::size_t need = std::max({*col_model, *col_metric, *col_cutoff, *col_value}) + 1;
    if (fields.size() < need) throw ParseError(source, line_no, "too few columns");
    ExternalResult* target = nullptr;
    for (auto& r : results) {
      if (r.model == fields[*col_model]) target = &r;
    }
    if (!target) {
      results.push_back({fields[*col_model], {}});
      target = &results.back();
    }
    try {
      const Metric metric = parse_metric(fields[*col_metric]);
      const auto cutoff = static_cast<std::size_t>(std::stoul(fields[*col_cutoff]));
      target->values[{metric, cutoff}] = std::stod(fields[*col_value]);
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return results;
}

std::string format_report_markdown(std::span<const EvalReport> reports, const MetricSpec& spec,
                                   std::span<const ExternalResult> external,
                                   std::string_view title) {
  std::vector<std::pair<Metric, std::size_t>> columns;
  for (const Metric m : spec.metrics) {
    for (const std::size_t k : spec.cutoffs) columns.emplace_back(m, k);
  }

  std::string out;
  if (!title.empty()) out += "### " + std::string(title) + "\n\n";
  out += "| Methods |";
  for (const auto& [m, k] : columns) out += " " + std::string(short_label(m)) + "@" + std::to_string(k) + " |";
  out += "\n|---|";
  for (std::size_t c = 0; c < columns.size(); ++c) out += "---|";
  out += "\n";

  const auto baseline_value = [&](const EvalReport& r, std::size_t c) {
    return r.value(columns[c].first, columns[c].second);
  };
  const auto external_value = [&](const ExternalResult& e, std::size_t c) -> std::optional<double> {
    const auto it = e.values.find(columns[c]);
    if (it == e.values.end()) return std::nullopt;
    return it->second;
  };

  std::vector<std::optional<double>> best_external(columns.size());
  std::vector<std::optional<double>> best_baseline(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& e : external) {
      if (const auto v = external_value(e, c)) {
        best_external[c] = std::max(best_external[c].value_or(-INFINITY), rounded(*v));
      }
    }
    for (const auto& r : reports) {
      if (const auto v = baseline_value(r, c)) {
        best_baseline[c] = std::max(best_baseline[c].value_or(-INFINITY), rounded(*v));
      }
    }
  }

  const auto cell = [](std::optional<double> v, bool bold) {
    if (!v) return std::string(" - |");
    const std::string s = fixed(*v, 3);
    return bold ? " **" + s + "** |" : " " + s + " |";
  };

  for (const auto& r : reports) {
    out += "| " + r.model + " |";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto v = baseline_value(r, c);
      bool bold = false;
      if (v) {
        bold = best_external[c] ? rounded(*v) >= *best_external[c]
                                : rounded(*v) >= best_baseline[c].value_or(INFINITY);
      }
      out += cell(v, bold);
    }
    out += "\n";
  }
  for (const auto& e : external) {
    out += "| " + e.model + " |";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto v = external_value(e, c);
      const bool bold = v && (!best_baseline[c] || rounded(*v) > *best_baseline[c]) &&
                        rounded(*v) >= *best_external[c];
      out += cell(v, bold);
    }
    out += "\n";
  }
  return out;
}

}  // namespace recbench
