#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recbench/tuner/tuner.hpp"

namespace recbench {

// History CSV
// -----------
//   # <free-form provenance comment lines>
//   trial,<param names of the kind>,objective,seconds,status,source
//   0,100,12.5,bm25,0.31415926535897931,0.052133,ok,random
//   7,5,0,none,0,0.000120,failed:<reason>,surrogate
//
// `objective` and real parameters use round-trip precision (%.17g) so a
// partially written file can be replayed exactly; `seconds` uses %.6f.
// Failure reasons have commas and newlines replaced by ';' and ' '.

std::string history_csv_header(ModelKind kind);
std::string format_trial_row(ModelKind kind, const Trial& trial);
std::string format_history_csv(const TuneResult& result, std::string_view comment = {});

/// Parses rows written by format_history_csv / format_trial_row (comment lines
/// are skipped; the header must match `kind`). A truncated final line is
/// ignored, as left behind by an interrupted run.
std::vector<Trial> parse_history_csv(std::string_view text, ModelKind kind,
                                     const std::string& source = "<memory>");

// best_params
// -----------
//   # <comment lines>
//   model = EASE
//   objective = ndcg@20
//   value = 0.12345
//   trial = 17
//   l2 = 412.56
//
// Every non-comment line is `key = value`; `value` and `trial` are
// informational, the remaining keys after `model` are HyperParams names.

std::string format_best_params(const TuneResult& result, std::string_view comment = {});
ModelSpec parse_best_params(std::string_view text, const std::string& source = "<memory>");

}  // namespace recbench
