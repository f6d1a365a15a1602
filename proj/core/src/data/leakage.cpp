#include "recbench/data/leakage.hpp"

#include <algorithm>
#include <iterator>

#include "recbench/common/error.hpp"

namespace recbench {
namespace {

std::size_t overlap(std::span<const Index> a, std::span<const Index> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

void require_shape(const InteractionMatrix& a, const InteractionMatrix& b, const char* what) {
  if (a.n_users() != b.n_users() || a.n_items() != b.n_items()) {
    throw DimensionMismatchError(std::string("audit: train and ") + what +
                                 " dimensions differ (" + std::to_string(a.n_users()) + "x" +
                                 std::to_string(a.n_items()) + " vs " +
                                 std::to_string(b.n_users()) + "x" +
                                 std::to_string(b.n_items()) + ")");
  }
}

}  // namespace

LeakageReport audit_leakage(const SplitPair& split) {
  require_shape(split.train, split.test, "test");
  if (split.validation) require_shape(split.train, *split.validation, "validation");

  LeakageReport report;
  report.total_users = split.train.n_users();
  for (std::size_t u = 0; u < split.train.n_users(); ++u) {
    std::size_t count = overlap(split.train.row(u), split.test.row(u));
    if (split.validation) {
      count += overlap(split.train.row(u), split.validation->row(u));
      count += overlap(split.test.row(u), split.validation->row(u));
    }
    if (count > 0) {
      report.per_user_overlap.emplace_back(static_cast<Index>(u), count);
      ++report.leaked_users;
      report.leaked_pairs += count;
    }
  }
  return report;
}

SplitPair resplit_union(const SplitPair& split, double train_ratio, std::uint64_t seed) {
  require_shape(split.train, split.test, "test");
  return split_user_holdout(union_of(split.train, split.test), train_ratio, seed);
}

std::string format_leakage_csv(const LeakageReport& report, const IdBijection* users) {
  std::string out = "user,overlap\n";
  for (const auto& [user, count] : report.per_user_overlap) {
    out += users ? users->external(user) : std::to_string(user);
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

std::string format_leakage_summary(const LeakageReport& report) {
  return std::to_string(report.leaked_users) + "/" + std::to_string(report.total_users) + " " +
         std::to_string(report.leaked_pairs);
}

}  // namespace recbench
