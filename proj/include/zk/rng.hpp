#ifndef ZK_RNG_HPP
#define ZK_RNG_HPP

#include <cstdint>

namespace zk {

// Deterministic per-stream generator.  Streams are derived from (seed, index)
// so sampling loops produce identical values regardless of how iterations are
// scheduled across threads.  splitmix64 state transition; doubles take the
// top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : Rng(seed + 0xbf58476d1ce4e5b9ull * (stream + 1)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace zk

#endif
