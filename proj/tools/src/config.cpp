#include "recbench/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "recbench/common/hash.hpp"

namespace recbench::cli {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '-';
  });
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw UsageError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') throw UsageError(key + ": expected a number, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError(key + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& v) {
  std::filesystem::path p(v);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& source) {
  KeyValueConfig cfg;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(line_no) + ": expected `key = value`");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (!valid_key(key)) {
      throw UsageError(source + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
    }
    cfg.set(std::move(key), std::move(value));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  if (const auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

ModelSpec ExperimentConfig::fixed_spec(ModelKind kind) const {
  ModelSpec spec{kind, default_params(kind)};
  if (const auto it = fixed_params.find(kind); it != fixed_params.end()) {
    const HyperParams& o = it->second;
    if (o.topk) spec.params.topk = o.topk;
    if (o.shrink) spec.params.shrink = o.shrink;
    if (o.weighting) spec.params.weighting = o.weighting;
    if (o.alpha) spec.params.alpha = o.alpha;
    if (o.beta) spec.params.beta = o.beta;
    if (o.l2) spec.params.l2 = o.l2;
  }
  return spec;
}

std::string ExperimentConfig::canonical_text() const {
  std::map<std::string, std::string> kv;
  kv["dataset.path"] = dataset_path.filename().string();
  kv["dataset.format"] = std::string(to_string(dataset_format));
  kv["dataset.name"] = dataset_name;
  kv["kcore.min_user"] = std::to_string(kcore_min_user);
  kv["kcore.min_item"] = std::to_string(kcore_min_item);
  kv["split.ratio"] = format_real(split_ratio);
  kv["split.seed"] = std::to_string(split_seed);
  kv["split.validation"] = validation;
  kv["split.validation_ratio"] = format_real(validation_ratio);
  std::string models_text;
  for (const auto k : models) models_text += (models_text.empty() ? "" : ",") + std::string(to_string(k));
  kv["models"] = models_text;
  for (const auto& [kind, params] : fixed_params) {
    for (const auto& [name, value] : params_to_strings(ModelSpec{kind, params})) {
      kv["model." + std::string(to_string(kind)) + "." + name] = value;
    }
  }
  kv["tune.objective"] = to_string(objective);
  kv["tune.budget"] = std::to_string(tune_budget);
  kv["tune.n_random"] = std::to_string(tune_n_random);
  kv["tune.seed"] = std::to_string(tune_seed);
  std::string cut;
  for (const auto k : eval.cutoffs) cut += (cut.empty() ? "" : ",") + std::to_string(k);
  kv["eval.cutoffs"] = cut;
  std::string mets;
  for (const auto m : eval.metrics) mets += (mets.empty() ? "" : ",") + std::string(to_string(m));
  kv["eval.metrics"] = mets;
  kv["eval.use_tuned"] = use_tuned ? "true" : "false";
  kv["bench.cutoff"] = std::to_string(bench_cutoff);
  kv["bench.repetitions"] = std::to_string(bench_repetitions);
  kv["ease.item_cap"] = std::to_string(ease_item_cap);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical_text()); }

ExperimentConfig interpret(const KeyValueConfig& kv, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  c.eval.cutoffs = {5, 10, 20};
  c.eval.metrics = {Metric::Recall, Metric::Ndcg, Metric::Coverage, Metric::Novelty, Metric::F1};
  c.output_dir = resolve(base_dir, c.output_dir.string());
  for (const auto& [key, value] : kv.entries()) {
    try {
      if (key == "dataset.path") c.dataset_path = resolve(base_dir, value);
      else if (key == "dataset.format") c.dataset_format = parse_input_format(value);
      else if (key == "dataset.name") c.dataset_name = value;
      else if (key == "kcore.min_user") c.kcore_min_user = to_u64(key, value);
      else if (key == "kcore.min_item") c.kcore_min_item = to_u64(key, value);
      else if (key == "kcore") c.kcore_min_user = c.kcore_min_item = to_u64(key, value);
      else if (key == "split.ratio") c.split_ratio = to_real(key, value);
      else if (key == "split.seed") c.split_seed = to_u64(key, value);
      else if (key == "split.validation") {
        if (value != "loo" && value != "holdout" && value != "none") {
          throw UsageError("split.validation must be loo, holdout or none");
        }
        c.validation = value;
      } else if (key == "split.validation_ratio") c.validation_ratio = to_real(key, value);
      else if (key == "models") {
        c.models.clear();
        for (const auto& m : list(value)) c.models.push_back(parse_model_kind(m));
      } else if (key.rfind("model.", 0) == 0) {
        const auto dot = key.find('.', 6);
        if (dot == std::string::npos) throw UsageError("expected model.<Kind>.<param>: " + key);
        const ModelKind kind = parse_model_kind(key.substr(6, dot - 6));
        set_param(c.fixed_params[kind], key.substr(dot + 1), value);
      } else if (key == "tune.objective") c.objective = parse_metric_at_k(value);
      else if (key == "tune.budget") c.tune_budget = to_u64(key, value);
      else if (key == "tune.n_random") c.tune_n_random = to_u64(key, value);
      else if (key == "tune.seed") c.tune_seed = to_u64(key, value);
      else if (key == "eval.cutoffs") {
        c.eval.cutoffs.clear();
        for (const auto& k : list(value)) c.eval.cutoffs.push_back(to_u64(key, k));
      } else if (key == "eval.metrics") {
        c.eval.metrics.clear();
        for (const auto& m : list(value)) c.eval.metrics.push_back(parse_metric(m));
      } else if (key == "eval.comparison") c.comparison_path = resolve(base_dir, value);
      else if (key == "eval.use_tuned") c.use_tuned = to_bool(key, value);
      else if (key == "eval.save_models") c.save_models = to_bool(key, value);
      else if (key == "bench.cutoff") c.bench_cutoff = to_u64(key, value);
      else if (key == "bench.repetitions") c.bench_repetitions = to_u64(key, value);
      else if (key == "ease.item_cap") c.ease_item_cap = to_u64(key, value);
      else if (key == "threads") c.threads = static_cast<unsigned>(to_u64(key, value));
      else if (key == "output.dir") c.output_dir = resolve(base_dir, value);
      else throw UsageError("unknown configuration key '" + key + "'");
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(key + ": " + e.what());
    }
  }
  if (!(c.split_ratio > 0.0 && c.split_ratio < 1.0)) throw UsageError("split.ratio must lie in (0, 1)");
  try {
    c.eval.validate();
  } catch (const std::exception& e) {
    throw UsageError(std::string("eval: ") + e.what());
  }
  return c;
}

}  // namespace recbench::cli
