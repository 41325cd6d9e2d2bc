#pragma once

#include <cstdint>

namespace ratekit {

// Deterministic splitmix64 generator. The standard <random> distributions are
// implementation-defined, so every randomized suite in this project draws
// through this class to keep reports byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive integer range.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_u64() %
                                          static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Stable per-case child generator: suites hand one of these to each case so
  // results do not depend on evaluation order or thread count.
  Rng child(std::uint64_t index) const {
    return Rng(state_ ^ (0x9e3779b97f4a7c15ull * (index + 0x632be59bd9b4e019ull)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace ratekit
