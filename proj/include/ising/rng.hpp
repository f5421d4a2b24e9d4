#ifndef ISING_RNG_HPP
#define ISING_RNG_HPP

#include <cstdint>

namespace ising {

// SplitMix64: tiny splittable counter generator. Every sampled artifact
// records its 64-bit seed, and independent streams are derived with
// split(), so runs are bit-reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // uniform in [0, n)
  uint64_t next_below(uint64_t n) {
    // rejection-free Lemire reduction is overkill here; modulo bias is
    // negligible for n << 2^64 but we reject to keep draws exact.
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Derive an independent stream; label keeps sibling streams distinct.
  Rng split(uint64_t label) {
    uint64_t s = next_u64();
    return Rng(s ^ (0x9e3779b97f4a7c15ULL * (label + 1)));
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace ising

#endif
