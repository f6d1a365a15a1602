#include "recbench/models/hyper_params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace recbench {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_real(std::string_view name, std::string_view text) {
  const std::string tmp(text);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw std::invalid_argument("parameter " + std::string(name) + ": not a number: " + tmp);
  }
  return v;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::TopPop: return "TopPop";
    case ModelKind::ItemKNN: return "ItemKNN";
    case ModelKind::UserKNN: return "UserKNN";
    case ModelKind::P3Alpha: return "P3Alpha";
    case ModelKind::RP3Beta: return "RP3Beta";
    case ModelKind::EASE: return "EASE";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  const std::string n = lower(name);
  for (const ModelKind k : kAllModelKinds) {
    if (lower(to_string(k)) == n) return k;
  }
  if (n == "p3a" || n == "p3") return ModelKind::P3Alpha;
  if (n == "rp3b" || n == "rp3") return ModelKind::RP3Beta;
  throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::None: return "none";
    case Weighting::TfIdf: return "tf-idf";
    case Weighting::Bm25: return "bm25";
  }
  return "?";
}

Weighting parse_weighting(std::string_view name) {
  const std::string n = lower(name);
  if (n == "none") return Weighting::None;
  if (n == "tf-idf" || n == "tfidf") return Weighting::TfIdf;
  if (n == "bm25") return Weighting::Bm25;
  throw std::invalid_argument("unknown weighting '" + std::string(name) + "'");
}

std::vector<std::string> param_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::TopPop: return {};
    case ModelKind::ItemKNN:
    case ModelKind::UserKNN: return {"topk", "shrink", "weighting"};
    case ModelKind::P3Alpha: return {"topk", "alpha"};
    case ModelKind::RP3Beta: return {"topk", "alpha", "beta"};
    case ModelKind::EASE: return {"l2"};
  }
  return {};
}

HyperParams default_params(ModelKind kind) {
  HyperParams p;
  switch (kind) {
    case ModelKind::TopPop: break;
    case ModelKind::ItemKNN:
    case ModelKind::UserKNN:
      p.topk = 100;
      p.shrink = 10.0;
      p.weighting = Weighting::None;
      break;
    case ModelKind::P3Alpha:
      p.topk = 100;
      p.alpha = 1.0;
      break;
    case ModelKind::RP3Beta:
      p.topk = 100;
      p.alpha = 1.0;
      p.beta = 0.5;
      break;
    case ModelKind::EASE: p.l2 = 500.0; break;
  }
  return p;
}

void validate(const ModelSpec& spec) {
  const auto names = param_names(spec.kind);
  const auto uses = [&](const char* n) {
    return std::find(names.begin(), names.end(), n) != names.end();
  };
  const auto check = [&](bool present, const char* n) {
    if (present != uses(n)) {
      throw std::invalid_argument(std::string(to_string(spec.kind)) +
                                  (present ? ": unexpected parameter " : ": missing parameter ") + n);
    }
  };
  const HyperParams& p = spec.params;
  check(p.topk.has_value(), "topk");
  check(p.shrink.has_value(), "shrink");
  check(p.weighting.has_value(), "weighting");
  check(p.alpha.has_value(), "alpha");
  check(p.beta.has_value(), "beta");
  check(p.l2.has_value(), "l2");
  if (p.topk && *p.topk < 1) throw std::invalid_argument("topk must be >= 1");
  if (p.shrink && !(*p.shrink >= 0.0)) throw std::invalid_argument("shrink must be >= 0");
  if (p.alpha && !(*p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (p.beta && !(*p.beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (p.l2 && !(*p.l2 > 0.0)) throw std::invalid_argument("l2 must be > 0");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> params_to_strings(const ModelSpec& spec) {
  std::map<std::string, std::string> out;
  const HyperParams& p = spec.params;
  if (p.topk) out["topk"] = std::to_string(*p.topk);
  if (p.shrink) out["shrink"] = format_real(*p.shrink);
  if (p.weighting) out["weighting"] = std::string(to_string(*p.weighting));
  if (p.alpha) out["alpha"] = format_real(*p.alpha);
  if (p.beta) out["beta"] = format_real(*p.beta);
  if (p.l2) out["l2"] = format_real(*p.l2);
  return out;
}

std::string format_params(const ModelSpec& spec, std::string_view separator) {
  const auto values = params_to_strings(spec);
  std::string out;
  for (const auto& name : param_names(spec.kind)) {
    const auto it = values.find(name);
    if (it == values.end()) continue;
    if (!out.empty()) out += separator;
    out += name + "=" + it->second;
  }
  return out;
}

void set_param(HyperParams& params, std::string_view name, std::string_view value) {
  if (name == "topk") {
    const double v = parse_real(name, value);
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("topk must be a positive integer");
    params.topk = static_cast<std::size_t>(v);
  } else if (name == "shrink") {
    params.shrink = parse_real(name, value);
  } else if (name == "weighting") {
    params.weighting = parse_weighting(value);
  } else if (name == "alpha") {
    params.alpha = parse_real(name, value);
  } else if (name == "beta") {
    params.beta = parse_real(name, value);
  } else if (name == "l2") {
    params.l2 = parse_real(name, value);
  } else {
    throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
  }
}

}  // namespace recbench
