#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace peanut {

/// splitmix64 step (Vigna, public domain). Used only to spread seeds.
uint64_t splitmix64(uint64_t& state);

/// Seed for a named substream of a master seed. Streams derived from
/// distinct indices are independent for our purposes, and the derivation is
/// part of the reproducibility contract: results depend only on
/// (master seed, index), never on evaluation order.
uint64_t derive_seed(uint64_t master, uint64_t index);

/// Deterministic random stream: std::mt19937_64 (whose output sequence the
/// C++ standard pins down) plus fixed transforms, so that draws are
/// reproducible across platforms and reimplementations.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform01();

  /// Unbiased integer in [0, n) by rejection. n must be positive.
  uint64_t below(uint64_t n);

  /// Normal draw via the Box-Muller transform; each call consumes exactly
  /// two uniforms and no state is cached between calls.
  double normal(double mean, double sd);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace peanut
