#include "recbench/data/id_maps.hpp"

#include <limits>
#include <stdexcept>

namespace recbench {

Index IdBijection::intern(std::string_view external) {
  std::string key(external);
  if (const auto it = index_.find(key); it != index_.end()) return it->second;
  if (externals_.size() >= std::numeric_limits<Index>::max()) {
    throw std::length_error("IdBijection: index space exhausted");
  }
  const auto idx = static_cast<Index>(externals_.size());
  index_.emplace(key, idx);
  externals_.push_back(std::move(key));
  return idx;
}

std::optional<Index> IdBijection::find(std::string_view external) const {
  if (const auto it = index_.find(std::string(external)); it != index_.end()) return it->second;
  return std::nullopt;
}

IdBijection IdBijection::identity(std::size_t n) {
  IdBijection b;
  b.externals_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) b.intern(std::to_string(i));
  return b;
}

IdBijection IdBijection::select(const std::vector<Index>& kept_old) const {
  IdBijection b;
  for (const Index old : kept_old) b.intern(external(old));
  return b;
}

}  // namespace recbench
