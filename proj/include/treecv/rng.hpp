// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace treecv {

// Counter-based, splittable generator.
//
// Output i (1-based) of a stream with key K is mix64(K + i * 0x9E3779B97F4A7C15),
// which is exactly the SplitMix64 sequence started from state K. Child streams
// are derived from (key, tag) pairs with derive_key(), so any position in the
// scheduling tree can name its stream without touching a shared generator.
// Reference vectors live in tests/oracles/rng_vectors.py.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t tag) noexcept {
  return mix64(mix64(key ^ 0x6A09E667F3BCC909ULL) + tag * kGolden);
}

/// Folds derive_key over a tag path: derive_key(derive_key(key, t0), t1) ...
constexpr std::uint64_t derive_key(std::uint64_t key,
                                   std::initializer_list<std::uint64_t> path) noexcept {
  for (auto tag : path) key = derive_key(key, tag);
  return key;
}

/// Domain tags, so that streams used for different purposes never coincide.
namespace stream_tag {
inline constexpr std::uint64_t feed = 1;
inline constexpr std::uint64_t branch = 2;
inline constexpr std::uint64_t fold = 3;
inline constexpr std::uint64_t standard_order = 4;
inline constexpr std::uint64_t shuffle = 5;
inline constexpr std::uint64_t synth = 6;
inline constexpr std::uint64_t repetition = 7;
inline constexpr std::uint64_t stability = 8;
}  // namespace stream_tag

class CounterRng {
 public:
  constexpr CounterRng() = default;
  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  constexpr double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound). bound must be > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Standard normal via Box-Muller; consumes two outputs per call.
  double normal() noexcept;

  constexpr CounterRng split(std::uint64_t tag) const noexcept {
    return CounterRng(derive_key(key_, tag));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  friend constexpr bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// Fisher-Yates, walking i = n-1 .. 1 and swapping with below(i + 1).
template <typename T>
void shuffle_in_place(std::span<T> items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::size_t> random_permutation(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle_in_place(std::span<std::size_t>(perm), rng);
  return perm;
}

}  // namespace treecv
