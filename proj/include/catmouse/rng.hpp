#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace catmouse {

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so bounded draws use rejection sampling to keep
// seeded outputs identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform draw from [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = gen_();
      if (rem == 0 || r < 0 - rem) return r % bound;
    }
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  bool coin() { return (gen_() >> 63) != 0; }

  // k distinct values from [0, pool), ascending.
  std::vector<int> sample(int pool, int k) {
    std::vector<int> picked;
    picked.reserve(k);
    // Floyd's algorithm: deterministic and O(k) draws.
    for (int j = pool - k; j < pool; ++j) {
      int t = below_int(j + 1);
      bool dup = false;
      for (int x : picked) {
        if (x == t) { dup = true; break; }
      }
      picked.push_back(dup ? j : t);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace catmouse
