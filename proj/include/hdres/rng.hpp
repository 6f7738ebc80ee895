#pragma once

// Deterministic seeding and random sampling.
//
// Every random quantity in the library is a pure function of a 64-bit master
// seed. Sub-streams are derived from (seed, purpose tag, index) so that
// reordering or parallelizing work never changes results. Uniform and normal
// doubles are generated with fixed algorithms (not std::uniform_real_distribution
// et al., whose output is implementation-defined), so the same seed yields the
// same values on any standard library.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace hdres {

namespace detail {

// splitmix64 finalizer; good avalanche, standard constants.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

// Derives a child seed from (parent seed, purpose tag, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                    std::uint64_t index = 0) noexcept {
  const std::uint64_t h = detail::splitmix64(seed ^ detail::fnv1a64(tag));
  return detail::splitmix64(h ^ detail::splitmix64(index));
}

// Folds an extra word into a seed; used to bake sweep-point parameters
// into per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) noexcept {
  return detail::splitmix64(seed ^ detail::splitmix64(word));
}

// Seeded random source. mt19937_64 is fully specified by the standard; the
// double/normal helpers are fixed here, so sequences reproduce everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n); n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return (engine_() >> 63) != 0; }

  // Standard normal via Box-Muller; one cached value per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Child stream; pure function of (seed, tag, index), independent of how much
  // of this stream has been consumed.
  Rng derive(std::string_view tag, std::uint64_t index = 0) const {
    return Rng(derive_seed(seed_, tag, index));
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hdres
