#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace recbench {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so the
/// bounded-integer and real draws are done here: integers by rejection
/// sampling on the raw 64-bit output, reals from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1).
  double uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Fisher-Yates shuffle driven by below().
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// Standard normal via Box-Muller on uniform().
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from (seed, stream) with SplitMix64
/// finalization, so per-trial or per-user generators do not depend on the
/// number of draws made elsewhere.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace recbench
