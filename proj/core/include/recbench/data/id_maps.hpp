#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recbench/common/csr.hpp"

namespace recbench {

/// External-id <-> dense-index bijection; dense indices are 0..size()-1 in
/// order of first interning.
class IdBijection {
 public:
  Index intern(std::string_view external);
  std::optional<Index> find(std::string_view external) const;
  const std::string& external(Index index) const { return externals_.at(index); }
  std::size_t size() const noexcept { return externals_.size(); }

  /// "0", "1", ... "n-1" mapped onto themselves.
  static IdBijection identity(std::size_t n);

  /// Keeps only `kept_old[new_index]`, re-indexed densely.
  IdBijection select(const std::vector<Index>& kept_old) const;

  friend bool operator==(const IdBijection& a, const IdBijection& b) {
    return a.externals_ == b.externals_;
  }

 private:
  std::unordered_map<std::string, Index> index_;
  std::vector<std::string> externals_;
};

struct IdMaps {
  IdBijection users;
  IdBijection items;

  static IdMaps identity(std::size_t n_users, std::size_t n_items) {
    return {IdBijection::identity(n_users), IdBijection::identity(n_items)};
  }

  friend bool operator==(const IdMaps&, const IdMaps&) = default;
};

}  // namespace recbench
