#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recbench/data/loader.hpp"
#include "recbench/metrics/evaluate.hpp"
#include "recbench/models/hyper_params.hpp"

namespace recbench::cli {

/// Raised for bad configuration or command-line input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` store.
///
/// Grammar, one entry per line:
///   line    := blank | comment | entry
///   comment := optional spaces, '#', anything
///   entry   := key spaces? '=' spaces? value
///   key     := [A-Za-z0-9_.-]+
/// A value runs to the end of the line (trailing spaces and an unquoted
/// " #" comment are stripped). Later entries override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, const std::string& source = "<memory>");
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

struct ExperimentConfig {
  std::filesystem::path dataset_path;
  InputFormat dataset_format = InputFormat::TsvTriplet;
  std::string dataset_name = "dataset";

  std::size_t kcore_min_user = 0;
  std::size_t kcore_min_item = 0;

  double split_ratio = 0.8;
  std::uint64_t split_seed = 42;
  /// "loo", "holdout" or "none": carve-out of validation data from train.
  std::string validation = "loo";
  double validation_ratio = 0.8;

  std::vector<ModelKind> models;
  std::map<ModelKind, HyperParams> fixed_params;  ///< model.<Kind>.<param>

  MetricAtK objective{Metric::Ndcg, 20};
  std::size_t tune_budget = 0;  ///< 0: 35 or 50 by parameter count
  std::size_t tune_n_random = 5;
  std::uint64_t tune_seed = 42;

  MetricSpec eval;
  std::optional<std::filesystem::path> comparison_path;
  bool use_tuned = true;
  bool save_models = false;

  std::size_t bench_cutoff = 20;
  std::size_t bench_repetitions = 1;

  std::size_t ease_item_cap = 40'000;
  unsigned threads = 0;
  std::filesystem::path output_dir = "out";

  /// Fixed parameters for `kind`: defaults overlaid with model.<Kind>.*.
  ModelSpec fixed_spec(ModelKind kind) const;

  /// Stable fingerprint of every setting that affects results (output
  /// directory and thread count excluded).
  std::string hash() const;

  /// Canonical `key = value` dump, sorted by key.
  std::string canonical_text() const;
};

/// Interprets a KeyValueConfig. Relative paths resolve against `base_dir`.
/// Unknown keys raise UsageError so typos do not pass silently.
ExperimentConfig interpret(const KeyValueConfig& kv, const std::filesystem::path& base_dir = {});

}  // namespace recbench::cli
