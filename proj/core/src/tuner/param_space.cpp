#include "recbench/tuner/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace recbench {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double to_unit(double v, double lo, double hi, Scale scale) {
  double u = scale == Scale::Log ? (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo))
                                 : (v - lo) / (hi - lo);
  return std::clamp(u, 0.0, 1.0);
}

double from_unit(double u, double lo, double hi, Scale scale) {
  u = std::clamp(u, 0.0, 1.0);
  if (scale == Scale::Log) return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
  return lo + u * (hi - lo);
}

void assign_numeric(HyperParams& p, const std::string& name, double v) {
  if (name == "topk") p.topk = static_cast<std::size_t>(v);
  else if (name == "shrink") p.shrink = v;
  else if (name == "alpha") p.alpha = v;
  else if (name == "beta") p.beta = v;
  else if (name == "l2") p.l2 = v;
  else throw std::invalid_argument("ParamSpace: no numeric field named " + name);
}

double read_numeric(const HyperParams& p, const std::string& name) {
  std::optional<double> v;
  if (name == "topk" && p.topk) v = static_cast<double>(*p.topk);
  else if (name == "shrink") v = p.shrink;
  else if (name == "alpha") v = p.alpha;
  else if (name == "beta") v = p.beta;
  else if (name == "l2") v = p.l2;
  if (!v) throw std::invalid_argument("ParamSpace: parameter " + name + " not set");
  return *v;
}

}  // namespace

ParamSpace::ParamSpace(std::vector<ParamDef> params) : params_(std::move(params)) {
  for (const auto& p : params_) {
    std::visit(Overloaded{
                   [&](const IntegerRange& r) {
                     if (!(r.lo < r.hi)) throw std::invalid_argument(p.name + ": lo must be < hi");
                     if (p.scale == Scale::Log && r.lo <= 0) {
                       throw std::invalid_argument(p.name + ": log scale needs lo > 0");
                     }
                     ++dims_;
                   },
                   [&](const RealRange& r) {
                     if (!(r.lo < r.hi)) throw std::invalid_argument(p.name + ": lo must be < hi");
                     if (p.scale == Scale::Log && r.lo <= 0) {
                       throw std::invalid_argument(p.name + ": log scale needs lo > 0");
                     }
                     ++dims_;
                   },
                   [&](const Categorical& c) {
                     if (c.values.empty()) throw std::invalid_argument(p.name + ": no categories");
                     dims_ += c.values.size();
                   },
               },
               p.domain);
  }
}

std::vector<double> ParamSpace::sample(Rng& rng) const {
  std::vector<double> x;
  x.reserve(dims_);
  for (const auto& p : params_) {
    if (const auto* c = std::get_if<Categorical>(&p.domain)) {
      const auto pick = rng.below(c->values.size());
      for (std::size_t k = 0; k < c->values.size(); ++k) x.push_back(k == pick ? 1.0 : 0.0);
    } else {
      x.push_back(rng.uniform());
    }
  }
  return x;
}

HyperParams ParamSpace::decode(std::span<const double> point) const {
  if (point.size() != dims_) throw std::invalid_argument("ParamSpace::decode: wrong dimension");
  HyperParams out;
  std::size_t d = 0;
  for (const auto& p : params_) {
    std::visit(Overloaded{
                   [&](const IntegerRange& r) {
                     const double v = from_unit(point[d++], static_cast<double>(r.lo),
                                                static_cast<double>(r.hi), p.scale);
                     const double snapped = std::clamp(std::round(v), static_cast<double>(r.lo),
                                                       static_cast<double>(r.hi));
                     assign_numeric(out, p.name, snapped);
                   },
                   [&](const RealRange& r) {
                     assign_numeric(out, p.name, from_unit(point[d++], r.lo, r.hi, p.scale));
                   },
                   [&](const Categorical& c) {
                     std::size_t best = 0;
                     for (std::size_t k = 1; k < c.values.size(); ++k) {
                       if (point[d + k] > point[d + best]) best = k;
                     }
                     d += c.values.size();
                     if (p.name != "weighting") {
                       throw std::invalid_argument("ParamSpace: no categorical field " + p.name);
                     }
                     out.weighting = parse_weighting(c.values[best]);
                   },
               },
               p.domain);
  }
  return out;
}

std::vector<double> ParamSpace::encode(const HyperParams& params) const {
  std::vector<double> x;
  x.reserve(dims_);
  for (const auto& p : params_) {
    std::visit(Overloaded{
                   [&](const IntegerRange& r) {
                     x.push_back(to_unit(read_numeric(params, p.name), static_cast<double>(r.lo),
                                         static_cast<double>(r.hi), p.scale));
                   },
                   [&](const RealRange& r) {
                     x.push_back(to_unit(read_numeric(params, p.name), r.lo, r.hi, p.scale));
                   },
                   [&](const Categorical& c) {
                     if (!params.weighting) throw std::invalid_argument("weighting not set");
                     const std::string name(to_string(*params.weighting));
                     for (const auto& v : c.values) x.push_back(v == name ? 1.0 : 0.0);
                   },
               },
               p.domain);
  }
  return x;
}

ParamSpace default_space(ModelKind kind) {
  const ParamDef topk{"topk", IntegerRange{5, 1000}, Scale::Log};
  switch (kind) {
    case ModelKind::TopPop: return ParamSpace{};
    case ModelKind::ItemKNN:
    case ModelKind::UserKNN:
      return ParamSpace({topk,
                         {"shrink", RealRange{0.0, 1000.0}, Scale::Linear},
                         {"weighting", Categorical{{"none", "tf-idf", "bm25"}}, Scale::Linear}});
    case ModelKind::P3Alpha:
      return ParamSpace({topk, {"alpha", RealRange{0.0, 2.0}, Scale::Linear}});
    case ModelKind::RP3Beta:
      return ParamSpace({topk,
                         {"alpha", RealRange{0.0, 2.0}, Scale::Linear},
                         {"beta", RealRange{0.0, 2.0}, Scale::Linear}});
    case ModelKind::EASE: return ParamSpace({{"l2", RealRange{1.0, 1e5}, Scale::Log}});
  }
  return ParamSpace{};
}

std::size_t default_budget(const ParamSpace& space) {
  if (space.empty()) return 1;
  return space.size() <= 2 ? 35 : 50;
}

}  // namespace recbench
