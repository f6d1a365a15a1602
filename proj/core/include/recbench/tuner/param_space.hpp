#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "recbench/common/random.hpp"
#include "recbench/models/hyper_params.hpp"

namespace recbench {

enum class Scale { Linear, Log };

struct IntegerRange {
  long long lo;
  long long hi;
};
struct RealRange {
  double lo;
  double hi;
};
struct Categorical {
  std::vector<std::string> values;
};

struct ParamDef {
  std::string name;
  std::variant<IntegerRange, RealRange, Categorical> domain;
  Scale scale = Scale::Linear;
};

/// Search domain over HyperParams fields.
///
/// Points are handled in an encoded unit cube: each numeric parameter is one
/// coordinate in [0, 1] (log-transformed first when Scale::Log), each
/// categorical parameter is a one-hot block. Integers are relaxed to reals and
/// rounded when decoded.
class ParamSpace {
 public:
  ParamSpace() = default;
  explicit ParamSpace(std::vector<ParamDef> params);

  const std::vector<ParamDef>& params() const noexcept { return params_; }
  bool empty() const noexcept { return params_.empty(); }
  std::size_t size() const noexcept { return params_.size(); }
  std::size_t encoded_dims() const noexcept { return dims_; }

  /// Uniform random point in the encoded cube (one-hot blocks get a random
  /// category).
  std::vector<double> sample(Rng& rng) const;

  /// Decodes into the named HyperParams fields (argmax for one-hot blocks).
  HyperParams decode(std::span<const double> point) const;

  /// Inverse of decode for parameters that lie inside the space.
  std::vector<double> encode(const HyperParams& params) const;

  /// encode(decode(point)): snaps integers and categories.
  std::vector<double> canonical(std::span<const double> point) const {
    return encode(decode(point));
  }

 private:
  std::vector<ParamDef> params_;
  std::size_t dims_ = 0;
};

/// Search spaces per model:
///   ItemKNN/UserKNN  topk [5,1000] log-int, shrink [0,1000], weighting {none,tf-idf,bm25}
///   P3Alpha          topk [5,1000] log-int, alpha [0,2]
///   RP3Beta          topk [5,1000] log-int, alpha [0,2], beta [0,2]
///   EASE             l2 [1,1e5] log
///   TopPop           empty
ParamSpace default_space(ModelKind kind);

/// Trial budget: 1 for an empty space, 35 for at most two parameters,
/// otherwise 50.
std::size_t default_budget(const ParamSpace& space);

}  // namespace recbench
