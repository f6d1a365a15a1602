#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "recbench/models/model.hpp"

namespace recbench {

struct TimingReport {
  std::string model;
  double t_time = 0.0;       ///< fit wall-clock seconds
  double p_time = 0.0;       ///< score + rank every user, seconds
  double per_user_ms = 0.0;  ///< 1000 * p_time / n_users
  std::size_t n_users = 0;
  std::size_t cutoff = 0;
  std::string environment;
  bool failed = false;
  std::string failure;
};

struct BenchOptions {
  /// Measured repetitions; the median of each duration is reported.
  std::size_t repetitions = 1;
  /// One untimed fit plus a scoring pass over up to warmup_users users runs
  /// first to fault in pages and warm caches.
  bool warmup = true;
  std::size_t warmup_users = 64;
  FitOptions fit_options;
};

/// Monotonic wall-clock timing of a fit, then of top-`cutoff` masked
/// recommendation for every user. Data loading and serialization are outside
/// the measured region. Errors from fit propagate.
TimingReport bench_model(const ModelSpec& spec, std::shared_ptr<const InteractionMatrix> train,
                         std::size_t cutoff, const BenchOptions& options = {});

/// One report per spec; a model that throws yields a row with failed = true
/// and the suite continues.
std::vector<TimingReport> bench_suite(std::span<const ModelSpec> specs,
                                      std::shared_ptr<const InteractionMatrix> train,
                                      std::size_t cutoff, const BenchOptions& options = {});

/// Hardware / thread description recorded with every report.
std::string environment_note();

inline constexpr const char* kTimingCsvHeader =
    "Model,T-Time (s),P-Time (s),Avg. P-Time/User (ms)";

/// CSV rows under kTimingCsvHeader (failed rows print FAILED), then
/// `# ` comment lines with the environment and failure reasons.
std::string format_timing_csv(std::span<const TimingReport> reports);
std::string format_timing_markdown(std::span<const TimingReport> reports);

}  // namespace recbench
