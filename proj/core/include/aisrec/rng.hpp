#pragma once

#include <cstdint>
#include <vector>

namespace aisrec {

// splitmix64. Tiny, fast and statistically solid. Used for everything that
// carries a seeded-determinism contract, so results never depend on the
// standard library's generator/distribution internals.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // uniform integer in [0, n), unbiased; n must be > 0
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

  private:
    std::uint64_t state_;
};

// Stable child-seed derivation for independent sub-streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return SplitMix64(master ^ (0xA0761D6478BD642FULL * (salt + 1))).next();
}

template <typename T>
void seeded_shuffle(std::vector<T>& values, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace aisrec
