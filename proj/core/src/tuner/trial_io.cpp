#include "recbench/tuner/trial_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "recbench/common/error.hpp"

namespace recbench {
namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto at = line.find(sep, pos);
    out.emplace_back(line.substr(pos, at == std::string_view::npos ? line.npos : at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::string sanitize(std::string_view reason) {
  std::string out(reason);
  for (char& c : out) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

template <typename F>
void for_each_line(std::string_view text, F f) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    const bool terminated = eol != std::string_view::npos;
    if (!terminated) eol = text.size();
    f(++line_no, text.substr(pos, eol - pos), terminated);
    pos = eol + 1;
  }
}

void add_comment(std::string& out, std::string_view comment) {
  for_each_line(comment, [&](std::size_t, std::string_view line, bool) {
    out += "# ";
    out.append(line);
    out += '\n';
  });
}

}  // namespace

std::string history_csv_header(ModelKind kind) {
  std::string h = "trial";
  for (const auto& n : param_names(kind)) h += "," + n;
  return h + ",objective,seconds,status,source";
}

std::string format_trial_row(ModelKind kind, const Trial& trial) {
  const auto values = params_to_strings(ModelSpec{kind, trial.params});
  std::string row = std::to_string(trial.index);
  for (const auto& n : param_names(kind)) {
    const auto it = values.find(n);
    row += ",";
    if (it != values.end()) row += it->second;
  }
  row += "," + format_real(trial.ok() ? trial.objective : 0.0);
  row += "," + seconds(trial.fit_seconds);
  row += trial.ok() ? ",ok" : ",failed:" + sanitize(trial.failure);
  row += trial.source == TrialSource::Random ? ",random" : ",surrogate";
  return row;
}

std::string format_history_csv(const TuneResult& result, std::string_view comment) {
  std::string out;
  add_comment(out, comment);
  out += history_csv_header(result.kind) + "\n";
  for (const auto& t : result.history) out += format_trial_row(result.kind, t) + "\n";
  return out;
}

std::vector<Trial> parse_history_csv(std::string_view text, ModelKind kind, const std::string& source) {
  std::vector<Trial> trials;
  const std::string header = history_csv_header(kind);
  const auto names = param_names(kind);
  bool header_seen = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw, bool terminated) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    if (!header_seen) {
      if (line != header) throw ParseError(source, line_no, "unexpected header, want " + header);
      header_seen = true;
      return;
    }
    if (!terminated) return;
    const auto fields = split(line, ',');
    if (fields.size() != names.size() + 5) throw ParseError(source, line_no, "wrong column count");
    try {
      Trial t;
      t.index = std::stoul(fields[0]);
      for (std::size_t k = 0; k < names.size(); ++k) set_param(t.params, names[k], fields[1 + k]);
      t.objective = std::strtod(fields[names.size() + 1].c_str(), nullptr);
      t.fit_seconds = std::strtod(fields[names.size() + 2].c_str(), nullptr);
      const std::string& status = fields[names.size() + 3];
      if (status == "ok") {
        t.status = TrialStatus::Ok;
      } else if (status.rfind("failed", 0) == 0) {
        t.status = TrialStatus::Failed;
        t.failure = status.size() > 7 ? status.substr(7) : "";
      } else {
        throw std::invalid_argument("bad status '" + status + "'");
      }
      const std::string& src = fields[names.size() + 4];
      if (src != "random" && src != "surrogate") throw std::invalid_argument("bad source");
      t.source = src == "random" ? TrialSource::Random : TrialSource::Surrogate;
      trials.push_back(std::move(t));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  });
  if (!header_seen && !trials.empty()) throw ParseError(source, 1, "missing header");
  return trials;
}

std::string format_best_params(const TuneResult& result, std::string_view comment) {
  std::string out;
  add_comment(out, comment);
  out += "model = " + std::string(to_string(result.kind)) + "\n";
  out += "objective = " + to_string(result.objective) + "\n";
  out += "value = " + format_real(result.best.objective) + "\n";
  out += "trial = " + std::to_string(result.best.index) + "\n";
  const auto values = params_to_strings(ModelSpec{result.kind, result.best.params});
  for (const auto& n : param_names(result.kind)) out += n + " = " + values.at(n) + "\n";
  return out;
}

ModelSpec parse_best_params(std::string_view text, const std::string& source) {
  ModelSpec spec;
  bool have_model = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw, bool) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "model") {
        spec.kind = parse_model_kind(value);
        have_model = true;
      } else if (key == "objective" || key == "value" || key == "trial") {
        return;
      } else {
        set_param(spec.params, key, value);
      }
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  });
  if (!have_model) throw ParseError(source, 1, "missing `model = ...` line");
  validate(spec);
  return spec;
}

}  // namespace recbench
