#pragma once

#include <cstdint>

#include "sipserlab/rational.hpp"

namespace sipserlab {

// Counter-based generator: output i of a stream is splitmix64(key + i*phi).
// Streams derived from (master seed, task index) are independent, so parallel
// Monte Carlo sweeps give identical results for any thread count.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ kPhi)) {}

  SplitRng derive(std::uint64_t stream) const {
    SplitRng r(0);
    r.key_ = mix(key_ ^ mix(stream + kPhi));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next() { return mix(key_ + (++counter_) * kPhi); }

  // Uniform over [0, n) via rejection; exact, no modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      std::uint64_t r = next();
      if (r < limit) return r % n;
    }
  }

  // True with probability exactly num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return bounded(den) < num; }

  bool bernoulli(const Rational& q) {
    return bernoulli(bigint_to_u64(numerator(q)), bigint_to_u64(denominator(q)));
  }

 private:
  static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sipserlab
