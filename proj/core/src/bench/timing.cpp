#include "recbench/bench/timing.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

#include "recbench/common/parallel.hpp"

namespace recbench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void predict_all(const FittedModel& model, std::size_t n_users, std::size_t cutoff,
                 std::vector<std::vector<Index>>& sink) {
  sink.assign(n_users, {});
  parallel_chunks(n_users, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scores(model.n_items());
    for (std::size_t u = begin; u < end; ++u) {
      model.score_into(u, scores, /*mask_seen=*/true);
      sink[u] = top_k(scores, cutoff);
    }
  });
}

std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string environment_note() {
  std::string cpu = "unknown cpu";
  if (std::ifstream info("/proc/cpuinfo"); info) {
    std::string line;
    while (std::getline(info, line)) {
      if (line.rfind("model name", 0) == 0) {
        const auto colon = line.find(':');
        if (colon != std::string::npos) cpu = line.substr(colon + 2);
        break;
      }
    }
  }
  return cpu + "; hardware threads=" + std::to_string(std::thread::hardware_concurrency()) +
         "; worker threads=" + std::to_string(thread_count());
}

TimingReport bench_model(const ModelSpec& spec, std::shared_ptr<const InteractionMatrix> train,
                         std::size_t cutoff, const BenchOptions& options) {
  TimingReport report;
  report.model = std::string(to_string(spec.kind));
  report.n_users = train->n_users();
  report.cutoff = cutoff;
  report.environment = environment_note();

  std::vector<std::vector<Index>> sink;
  if (options.warmup) {
    const FittedModel warm = fit(spec, train, options.fit_options);
    predict_all(warm, std::min(options.warmup_users, train->n_users()), cutoff, sink);
  }

  std::vector<double> fit_times;
  std::vector<double> predict_times;
  const std::size_t reps = std::max<std::size_t>(options.repetitions, 1);
  for (std::size_t r = 0; r < reps; ++r) {
    auto start = Clock::now();
    const FittedModel model = fit(spec, train, options.fit_options);
    fit_times.push_back(seconds_since(start));

    start = Clock::now();
    predict_all(model, train->n_users(), cutoff, sink);
    predict_times.push_back(seconds_since(start));
  }
  report.t_time = median(fit_times);
  report.p_time = median(predict_times);
  report.per_user_ms =
      report.n_users > 0 ? 1000.0 * report.p_time / static_cast<double>(report.n_users) : 0.0;
  return report;
}

std::vector<TimingReport> bench_suite(std::span<const ModelSpec> specs,
                                      std::shared_ptr<const InteractionMatrix> train,
                                      std::size_t cutoff, const BenchOptions& options) {
  std::vector<TimingReport> reports;
  for (const auto& spec : specs) {
    try {
      reports.push_back(bench_model(spec, train, cutoff, options));
    } catch (const std::exception& e) {
      TimingReport failed;
      failed.model = std::string(to_string(spec.kind));
      failed.n_users = train ? train->n_users() : 0;
      failed.cutoff = cutoff;
      failed.environment = environment_note();
      failed.failed = true;
      failed.failure = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

std::string format_timing_csv(std::span<const TimingReport> reports) {
  std::string out = std::string(kTimingCsvHeader) + "\n";
  for (const auto& r : reports) {
    if (r.failed) {
      out += r.model + ",FAILED,FAILED,FAILED\n";
    } else {
      out += r.model + "," + fmt3(r.t_time) + "," + fmt3(r.p_time) + "," + fmt3(r.per_user_ms) + "\n";
    }
  }
  if (!reports.empty()) {
    out += "# environment: " + reports.front().environment + "; cutoff=" +
           std::to_string(reports.front().cutoff) + "\n";
  }
  for (const auto& r : reports) {
    if (r.failed) out += "# " + r.model + " failed: " + r.failure + "\n";
  }
  return out;
}

std::string format_timing_markdown(std::span<const TimingReport> reports) {
  std::string out = "| Model | T-Time (s) | P-Time (s) | Avg. P-Time/User (ms) |\n|---|---|---|---|\n";
  for (const auto& r : reports) {
    if (r.failed) {
      out += "| " + r.model + " | failed | failed | failed |\n";
    } else {
      out += "| " + r.model + " | " + fmt3(r.t_time) + " | " + fmt3(r.p_time) + " | " +
             fmt3(r.per_user_ms) + " |\n";
    }
  }
  if (!reports.empty()) out += "\n" + reports.front().environment + "\n";
  for (const auto& r : reports) {
    if (r.failed) out += "\n" + r.model + " failed: " + r.failure + "\n";
  }
  return out;
}

}  // namespace recbench
