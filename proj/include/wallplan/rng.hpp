#pragma once

#include <cstdint>
#include <random>

namespace wallplan {

/// splitmix64 finalizer. Used to derive independent child seeds from a
/// master seed so that reseeding per iteration stays reproducible.
inline uint64_t mix_seed(uint64_t master, uint64_t index) {
  uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic PRNG: std::mt19937_64 (bit-identical across platforms by
/// the standard) plus a rejection-sampled bounded draw, since
/// std::uniform_int_distribution is implementation defined.
class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(uint64_t seed) : engine_(seed) {}

  void seed(uint64_t s) { engine_.seed(s); }

  uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be > 0.
  uint64_t uniform_below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wallplan
