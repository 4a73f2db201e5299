#ifndef INGO_RNG_HPP
#define INGO_RNG_HPP

#include <cmath>
#include <cstdint>

namespace ingo {

namespace detail {

// SplitMix64 finalizer; full-period bijection on 64-bit integers.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seedable, splittable pseudo-random source (SplitMix64 core).
///
/// There is no global randomness anywhere in the library: every stochastic
/// operation takes an Rng explicitly, and `split` derives statistically
/// independent child streams so that consumers cannot perturb each other.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(detail::mix64(seed ^ 0x6a09e667f3bcc908ull)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Child stream independent of this one; splitting does not consume state.
  Rng split(std::uint64_t stream) const {
    return Rng(detail::mix64(state_ ^ detail::mix64(stream + 0x632be59bd9b4e019ull)));
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace ingo

#endif  // INGO_RNG_HPP
