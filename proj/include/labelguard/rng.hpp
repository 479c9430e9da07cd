#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace labelguard {

/// Seeded random source with portable output. The engine is std::mt19937_64,
/// whose sequence is pinned by the standard; the distributions below are
/// implemented here because the std distribution objects are not portable
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n). n must be > 0. Unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, pair cached).
  double normal();

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministically derives an independent sub-seed from a master seed, a
/// purpose tag and an index. Used to fan one experiment seed out to the
/// split, noise and fold streams without correlating them.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t index);

}  // namespace labelguard
