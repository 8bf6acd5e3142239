// rng.hpp — Seedable, splittable 64-bit random streams and seed derivation.
//
// Uniform doubles are produced from the high 53 bits of the raw output, so
// every draw is bit-reproducible across platforms and compilers. Derived
// streams (hash64 / derive_seed) make run outcomes independent of scheduling.

#pragma once

#include <cstdint>
#include <initializer_list>

namespace qoc {

namespace detail {
constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// SplitMix64 stream. Cheap to construct, one per logical draw sequence.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::splitmix_finalize(state_);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

// Mixes a fixed-length word sequence into one 64-bit seed. Used both for
// sweep seeds hash64({base_seed, grid_index, run_index}) and for per-run
// sub-streams hash64({run_seed, stream_tag}).
inline std::uint64_t hash64(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (std::uint64_t w : words) {
    h = detail::splitmix_finalize(h + 0x9E3779B97F4A7C15ULL + detail::splitmix_finalize(w));
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) { return hash64({base, a}); }

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return hash64({base, a, b});
}

}  // namespace qoc
