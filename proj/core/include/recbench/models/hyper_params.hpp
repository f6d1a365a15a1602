#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace recbench {

enum class ModelKind { TopPop, ItemKNN, UserKNN, P3Alpha, RP3Beta, EASE };

inline constexpr std::array<ModelKind, 6> kAllModelKinds = {
    ModelKind::TopPop,  ModelKind::ItemKNN, ModelKind::UserKNN,
    ModelKind::P3Alpha, ModelKind::RP3Beta, ModelKind::EASE};

std::string_view to_string(ModelKind kind);
/// Accepts the canonical names (case-insensitive), e.g. "itemknn", "P3Alpha".
ModelKind parse_model_kind(std::string_view name);

/// Feature weighting applied to the interaction matrix before KNN similarity.
enum class Weighting { None, TfIdf, Bm25 };

std::string_view to_string(Weighting w);
Weighting parse_weighting(std::string_view name);

/// Hyperparameters; a field is set only for the kinds that use it.
///
///   ItemKNN, UserKNN: topk, shrink, weighting
///   P3Alpha:          topk, alpha
///   RP3Beta:          topk, alpha, beta
///   EASE:             l2
///   TopPop:           (none)
struct HyperParams {
  std::optional<std::size_t> topk;
  std::optional<double> shrink;
  std::optional<Weighting> weighting;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> l2;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

struct ModelSpec {
  ModelKind kind = ModelKind::TopPop;
  HyperParams params;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Parameter names used by `kind`, in canonical order.
std::vector<std::string> param_names(ModelKind kind);

/// Reasonable fixed settings used when a model is run untuned.
HyperParams default_params(ModelKind kind);

/// Throws std::invalid_argument when keys do not match the kind's schema or a
/// value is out of range (topk >= 1, shrink >= 0, alpha/beta >= 0, l2 > 0).
void validate(const ModelSpec& spec);

/// `name=value` pairs in canonical order; reals printed with round-trip
/// precision.
std::map<std::string, std::string> params_to_strings(const ModelSpec& spec);
std::string format_params(const ModelSpec& spec, std::string_view separator = " ");

/// Sets one named parameter from text. Unknown names throw.
void set_param(HyperParams& params, std::string_view name, std::string_view value);

/// Round-trip formatting of a double ("%.17g").
std::string format_real(double v);

}  // namespace recbench
