#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace resilience {

// SplitMix64 step; used only to expand a root seed into stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic PRNG with a documented stream scheme: stream k of root seed s
// is mt19937_64 seeded with the (k+1)-th SplitMix64 output of s. Raw engine
// output and the 53-bit double mapping are pinned by the standard, so runs
// are bit-reproducible across platforms (std::uniform_real_distribution is
// not, which is why it is not used here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t root, std::uint64_t task) {
    std::uint64_t s = root;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= task; ++i) out = splitmix64_next(s);
    return Rng(out);
  }

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53 significant bits
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next_real(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // uniform over [0, n), rejection sampled
  std::uint64_t next_index(std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace resilience
