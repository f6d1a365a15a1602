#include "recbench/cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "recbench/bench/timing.hpp"
#include "recbench/cli/config.hpp"
#include "recbench/common/error.hpp"
#include "recbench/common/hash.hpp"
#include "recbench/common/parallel.hpp"
#include "recbench/data/kcore.hpp"
#include "recbench/data/leakage.hpp"
#include "recbench/data/loader.hpp"
#include "recbench/data/split.hpp"
#include "recbench/metrics/evaluate.hpp"
#include "recbench/metrics/report.hpp"
#include "recbench/models/serialize.hpp"
#include "recbench/tuner/trial_io.hpp"
#include "recbench/tuner/tuner.hpp"

namespace fs = std::filesystem;

namespace recbench::cli {
namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<unsigned> threads;
  std::vector<std::string> overrides;
};

struct AuditOptions {
  std::string train;
  std::string test;
  std::string format;
  bool resplit = false;
  double ratio = 0.8;
};

struct TuneCliOptions {
  std::vector<std::string> models;
};

ExperimentConfig build_config(const CommonOptions& o) {
  KeyValueConfig kv;
  fs::path base;
  if (!o.config_path.empty()) {
    kv = KeyValueConfig::load(o.config_path);
    base = fs::path(o.config_path).parent_path();
  }
  for (const auto& s : o.overrides) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    std::string key = s.substr(0, eq);
    std::string value = s.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    kv.set(std::move(key), std::move(value));
  }
  ExperimentConfig c = interpret(kv, base);
  if (o.seed) {
    c.split_seed = *o.seed;
    c.tune_seed = *o.seed;
  }
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  if (o.threads) c.threads = *o.threads;
  set_thread_count(c.threads);
  return c;
}

std::string provenance(const ExperimentConfig& c, std::string_view what) {
  return "recbench " + std::string(what) + " | config " + c.hash() + " | split.seed " +
         std::to_string(c.split_seed) + " | tune.seed " + std::to_string(c.tune_seed);
}

FitOptions fit_options(const ExperimentConfig& c) {
  FitOptions f;
  f.ease_item_cap = c.ease_item_cap;
  return f;
}

struct PreparedData {
  IdMaps ids;
  InteractionMatrix train;
  std::optional<InteractionMatrix> valid;
  InteractionMatrix test;

  InteractionMatrix full_train() const { return valid ? union_of(train, *valid) : train; }
};

InteractionMatrix load_dense(const fs::path& path, const IdMaps& ids) {
  auto loaded = load_interactions(path, InputFormat::TsvTriplet,
                                  IdMaps::identity(ids.users.size(), ids.items.size()));
  if (loaded.ids.users.size() != ids.users.size() || loaded.ids.items.size() != ids.items.size()) {
    throw UsageError(path.string() + ": contains indices outside the id maps");
  }
  return std::move(loaded.matrix);
}

PreparedData load_prepared(const fs::path& dir) {
  for (const char* f : {"train.tsv", "test.tsv", "idmap_users.tsv", "idmap_items.tsv"}) {
    if (!fs::exists(dir / f)) {
      throw UsageError("missing " + (dir / f).string() + " (run `recbench prepare` first)");
    }
  }
  PreparedData d;
  d.ids.users = parse_id_map(read_text_file(dir / "idmap_users.tsv"), "idmap_users.tsv");
  d.ids.items = parse_id_map(read_text_file(dir / "idmap_items.tsv"), "idmap_items.tsv");
  d.train = load_dense(dir / "train.tsv", d.ids);
  d.test = load_dense(dir / "test.tsv", d.ids);
  if (fs::exists(dir / "valid.tsv")) {
    try {
      d.valid = load_dense(dir / "valid.tsv", d.ids);
    } catch (const EmptyDatasetError&) {
      d.valid.reset();
    }
  }
  return d;
}

// ---------------------------------------------------------------- prepare

int cmd_prepare(const ExperimentConfig& c, std::ostream& out) {
  if (c.dataset_path.empty()) throw UsageError("prepare: dataset.path is not set");
  if (!fs::exists(c.dataset_path)) throw UsageError("input file not found: " + c.dataset_path.string());

  auto loaded = load_interactions(c.dataset_path, c.dataset_format);
  InteractionMatrix matrix = std::move(loaded.matrix);
  IdMaps ids = std::move(loaded.ids);
  if (c.kcore_min_user > 0 || c.kcore_min_item > 0) {
    auto core = kcore_filter(matrix, c.kcore_min_user, c.kcore_min_item);
    ids.users = ids.users.select(core.user_old_index);
    ids.items = ids.items.select(core.item_old_index);
    matrix = std::move(core.matrix);
  }

  SplitPair split = split_user_holdout(matrix, c.split_ratio, c.split_seed);
  InteractionMatrix train = split.train;
  std::optional<InteractionMatrix> valid;
  if (c.validation == "loo") {
    auto carve = split_leave_one_out(split.train, c.split_seed + 1);
    train = std::move(carve.train);
    valid = std::move(carve.test);
  } else if (c.validation == "holdout") {
    auto carve = split_user_holdout(split.train, c.validation_ratio, c.split_seed + 1);
    train = std::move(carve.train);
    valid = std::move(carve.test);
  }

  const fs::path dir = c.output_dir;
  fs::create_directories(dir);
  const std::string head = provenance(c, "prepare");
  write_text_file(dir / "train.tsv", format_interactions(train, nullptr, head + " | train"));
  write_text_file(dir / "test.tsv", format_interactions(split.test, nullptr, head + " | test"));
  if (valid) write_text_file(dir / "valid.tsv", format_interactions(*valid, nullptr, head + " | valid"));
  write_text_file(dir / "idmap_users.tsv", format_id_map(ids.users));
  write_text_file(dir / "idmap_items.tsv", format_id_map(ids.items));

  std::ostringstream manifest;
  manifest << "# " << head << "\n"
           << "input = " << c.dataset_path.filename().string() << "\n"
           << "input_hash = fnv1a64:" << hash_file(c.dataset_path) << "\n"
           << "input_format = " << to_string(c.dataset_format) << "\n"
           << "config_hash = " << c.hash() << "\n"
           << "kcore.min_user = " << c.kcore_min_user << "\n"
           << "kcore.min_item = " << c.kcore_min_item << "\n"
           << "split.protocol = user-holdout\n"
           << "split.ratio = " << format_real(c.split_ratio) << "\n"
           << "split.seed = " << c.split_seed << "\n"
           << "split.validation = " << c.validation << "\n"
           << "rng = mt19937_64, per-user stream derive_seed(seed, user)\n"
           << "n_users = " << matrix.n_users() << "\n"
           << "n_items = " << matrix.n_items() << "\n"
           << "nnz.input = " << matrix.nnz() << "\n"
           << "nnz.train = " << train.nnz() << "\n"
           << "nnz.valid = " << (valid ? valid->nnz() : 0) << "\n"
           << "nnz.test = " << split.test.nnz() << "\n";
  write_text_file(dir / "manifest.txt", manifest.str());

  out << "prepared " << matrix.n_users() << " users x " << matrix.n_items() << " items, "
      << matrix.nnz() << " interactions: train " << train.nnz() << ", valid "
      << (valid ? valid->nnz() : 0) << ", test " << split.test.nnz() << " -> " << dir.string()
      << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ audit

int cmd_audit(const ExperimentConfig& c, const AuditOptions& a, std::ostream& out) {
  if (a.train.empty() || a.test.empty()) throw UsageError("audit: --train and --test are required");
  for (const auto& p : {a.train, a.test}) {
    if (!fs::exists(p)) throw UsageError("input file not found: " + p);
  }
  const InputFormat format = a.format.empty() ? c.dataset_format : parse_input_format(a.format);
  auto train = load_interactions(a.train, format);
  auto test = load_interactions(a.test, format, train.ids);
  const IdMaps& ids = test.ids;
  SplitPair split;
  split.train = train.matrix.resized(ids.users.size(), ids.items.size());
  split.test = test.matrix;

  const LeakageReport report = audit_leakage(split);
  const fs::path dir = c.output_dir;
  fs::create_directories(dir);
  write_text_file(dir / "leakage.csv", format_leakage_csv(report, &ids.users));
  out << format_leakage_summary(report) << "\n";

  if (a.resplit) {
    const SplitPair clean = resplit_union(split, a.ratio, c.split_seed);
    const std::string head = provenance(c, "audit --resplit") + " | ratio " + format_real(a.ratio);
    write_text_file(dir / "train.tsv", format_interactions(clean.train, nullptr, head + " | train"));
    write_text_file(dir / "test.tsv", format_interactions(clean.test, nullptr, head + " | test"));
    write_text_file(dir / "idmap_users.tsv", format_id_map(ids.users));
    write_text_file(dir / "idmap_items.tsv", format_id_map(ids.items));
    const auto check = audit_leakage(clean);
    out << "resplit: " << clean.train.nnz() << " train, " << clean.test.nnz()
        << " test interactions, leakage " << format_leakage_summary(check) << " -> " << dir.string()
        << "\n";
  }
  return report.clean() ? kExitOk : kExitLeakage;
}

// ------------------------------------------------------------------- tune

std::vector<ModelKind> selected_models(const ExperimentConfig& c, const std::vector<std::string>& names) {
  std::vector<ModelKind> kinds;
  if (names.empty()) {
    kinds = c.models;
  } else {
    for (const auto& n : names) {
      try {
        kinds.push_back(parse_model_kind(n));
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (kinds.empty()) throw UsageError("no models selected (set `models = ...` or pass --model)");
  return kinds;
}

int cmd_tune(const ExperimentConfig& c, const TuneCliOptions& t, std::ostream& out, std::ostream& err) {
  const auto kinds = selected_models(c, t.models);
  const PreparedData data = load_prepared(c.output_dir);

  auto train = std::make_shared<const InteractionMatrix>(data.train);
  InteractionMatrix valid;
  if (data.valid) {
    valid = *data.valid;
  } else {
    auto carve = split_leave_one_out(data.train, c.split_seed + 1);
    train = std::make_shared<const InteractionMatrix>(std::move(carve.train));
    valid = std::move(carve.test);
  }

  int status = kExitOk;
  for (const ModelKind kind : kinds) {
    const std::string name(to_string(kind));
    const fs::path dir = c.output_dir / name;
    fs::create_directories(dir);
    const fs::path history_path = dir / "history.csv";
    const std::string head = provenance(c, "tune") + " | model " + name + " | objective " +
                             to_string(c.objective) + "\n" + "strategy: " + kSearchStrategy;

    std::string expected_prefix;
    for (std::size_t pos = 0; pos < head.size();) {
      auto eol = head.find('\n', pos);
      if (eol == std::string::npos) eol = head.size();
      expected_prefix += "# " + head.substr(pos, eol - pos) + "\n";
      pos = eol + 1;
    }
    expected_prefix += history_csv_header(kind) + "\n";

    TuneOptions options;
    options.budget = c.tune_budget;
    options.n_random = c.tune_n_random;
    options.seed = c.tune_seed;
    options.objective = c.objective;
    options.fit_options = fit_options(c);

    // Resume from an interrupted run with the same configuration.
    bool resumed = false;
    if (fs::exists(history_path)) {
      const std::string existing = read_text_file(history_path);
      if (existing.rfind(expected_prefix, 0) == 0) {
        options.resume = parse_history_csv(existing, kind, history_path.string());
        resumed = true;
      }
    }
    const ParamSpace space = default_space(kind);
    const std::size_t budget = space.empty() ? 1 : (c.tune_budget == 0 ? default_budget(space) : c.tune_budget);
    if (options.resume.size() > budget) options.resume.resize(budget);

    {
      std::string text = expected_prefix;
      for (const auto& trial : options.resume) text += format_trial_row(kind, trial) + "\n";
      write_text_file(history_path, text);
    }
    std::ofstream history(history_path, std::ios::binary | std::ios::app);
    options.on_trial = [&](const Trial& trial) {
      history << format_trial_row(kind, trial) << "\n";
      history.flush();
    };

    if (resumed && !options.resume.empty()) {
      out << name << ": resuming after " << options.resume.size() << " recorded trials\n";
    }
    try {
      const TuneResult result = tune(kind, space, train, valid, options);
      history.close();
      write_text_file(dir / "best_params", format_best_params(result, provenance(c, "tune")));
      out << name << ": " << result.history.size() << " trials, best " << to_string(c.objective)
          << " = " << format_real(result.best.objective) << " at trial " << result.best.index
          << " (" << format_params(ModelSpec{kind, result.best.params}) << ")\n";
    } catch (const TuningError& e) {
      err << name << ": " << e.what() << "\n";
      status = kExitModelFailure;
    }
  }
  return status;
}

// ------------------------------------------------------------------- eval

ModelSpec spec_for(const ExperimentConfig& c, ModelKind kind) {
  const fs::path best = c.output_dir / std::string(to_string(kind)) / "best_params";
  if (c.use_tuned && fs::exists(best)) {
    ModelSpec spec = parse_best_params(read_text_file(best), best.string());
    if (spec.kind != kind) throw UsageError(best.string() + ": model kind mismatch");
    return spec;
  }
  return c.fixed_spec(kind);
}

int cmd_eval(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.models.empty()) throw UsageError("eval: model list is empty (set `models = ...`)");
  const PreparedData data = load_prepared(c.output_dir);
  auto full = std::make_shared<const InteractionMatrix>(data.full_train());

  std::vector<EvalReport> reports;
  int status = kExitOk;
  for (const ModelKind kind : c.models) {
    const std::string name(to_string(kind));
    try {
      const ModelSpec spec = spec_for(c, kind);
      const FittedModel model = fit(spec, full, fit_options(c));
      if (c.save_models) {
        fs::create_directories(c.output_dir / name);
        save_model(model, c.output_dir / name / "model.bin");
      }
      reports.push_back(evaluate(model, data.test, c.eval, name, c.dataset_name));
      out << name << " (" << format_params(spec) << "): evaluated "
          << reports.back().n_evaluated_users << " users\n";
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      err << name << ": " << e.what() << "\n";
      status = kExitModelFailure;
    }
  }

  std::vector<ExternalResult> external;
  if (c.comparison_path) {
    if (!fs::exists(*c.comparison_path)) {
      throw UsageError("comparison file not found: " + c.comparison_path->string());
    }
    external = parse_comparison_csv(read_text_file(*c.comparison_path), c.comparison_path->string());
  }

  const std::string head = "# " + provenance(c, "eval") + "\n";
  write_text_file(c.output_dir / "eval.csv", head + format_report_csv(reports));
  const std::string table = format_report_markdown(reports, c.eval, external, c.dataset_name);
  write_text_file(c.output_dir / "eval.md", "<!-- " + provenance(c, "eval") + " -->\n\n" + table);
  out << table;
  return status;
}

// ------------------------------------------------------------------ bench

int cmd_bench(const ExperimentConfig& c, std::ostream& out) {
  if (c.models.empty()) throw UsageError("bench: model list is empty (set `models = ...`)");
  const PreparedData data = load_prepared(c.output_dir);
  auto full = std::make_shared<const InteractionMatrix>(data.full_train());
  std::vector<ModelSpec> specs;
  for (const ModelKind kind : c.models) specs.push_back(spec_for(c, kind));

  BenchOptions options;
  options.repetitions = c.bench_repetitions;
  options.fit_options = fit_options(c);
  const auto reports = bench_suite(specs, full, c.bench_cutoff, options);

  const std::string head = "# " + provenance(c, "bench") + "\n";
  write_text_file(c.output_dir / "bench.csv", format_timing_csv(reports) + head);
  const std::string table = format_timing_markdown(reports);
  write_text_file(c.output_dir / "bench.md", table);
  out << table;
  for (const auto& r : reports) {
    if (r.failed) return kExitModelFailure;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Experiment configuration file");
  sub->add_option("--seed", o.seed, "Overrides split.seed and tune.seed");
  sub->add_option("--out", o.out_dir, "Output directory (overrides output.dir)");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all hardware threads)");
  sub->add_option("--set", o.overrides, "Override a configuration entry, key=value");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"recbench: reproducible top-n recommendation baselines"};
  app.require_subcommand(1);

  CommonOptions common;
  AuditOptions audit;
  TuneCliOptions tune_opts;

  auto* prepare = app.add_subcommand("prepare", "Load, k-core filter and split a dataset");
  add_common(prepare, common);

  auto* audit_cmd = app.add_subcommand("audit", "Check a train/test split for leaked interactions");
  add_common(audit_cmd, common);
  audit_cmd->add_option("--train", audit.train, "Training interactions file")->required();
  audit_cmd->add_option("--test", audit.test, "Test interactions file")->required();
  audit_cmd->add_option("--format", audit.format, "tsv-triplet or adjacency-list");
  audit_cmd->add_flag("--resplit", audit.resplit, "Write a clean re-split of train+test");
  audit_cmd->add_option("--ratio", audit.ratio, "Train ratio for --resplit")->check(CLI::Range(0.0, 1.0));

  auto* tune_cmd = app.add_subcommand("tune", "Bayesian hyperparameter search on the validation split");
  add_common(tune_cmd, common);
  tune_cmd->add_option("--model", tune_opts.models, "Model(s) to tune (default: config models)");

  auto* eval_cmd = app.add_subcommand("eval", "Refit and evaluate on the test split");
  add_common(eval_cmd, common);

  auto* bench_cmd = app.add_subcommand("bench", "Time training and prediction");
  add_common(bench_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const ExperimentConfig config = build_config(common);
    if (*prepare) return cmd_prepare(config, out);
    if (*audit_cmd) return cmd_audit(config, audit, out);
    if (*tune_cmd) return cmd_tune(config, tune_opts, out, err);
    if (*eval_cmd) return cmd_eval(config, out, err);
    if (*bench_cmd) return cmd_bench(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptyDatasetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitModelFailure;
  }
  return kExitUsage;
}

}  // namespace recbench::cli
