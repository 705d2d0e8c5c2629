#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace electmap {

// Deterministic random source. All derived quantities (bounded integers,
// reals, normal and gamma variates) are built from raw mt19937_64 output, so
// streams are reproducible across platforms and standard libraries for a
// fixed seed and call sequence.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased uniform draw in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

  int below_int(int bound) {
    return static_cast<int>(below(static_cast<std::uint64_t>(bound)));
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double normal();

  // Gamma(shape, scale) via Marsaglia-Tsang, with the boost trick for
  // shape < 1.
  double gamma(double shape, double scale);

  // Independent stream derived from this source's seed only; repeated calls
  // with the same stream index yield identical children regardless of how
  // much this source has been consumed.
  RandomSource child(std::uint64_t stream) const;

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// splitmix64 mixing step; used for seed derivation.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace electmap
