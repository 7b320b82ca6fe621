#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ejaopt {

/// Seed used whenever a caller does not provide one.
inline constexpr std::uint64_t kDefaultSeed = 0x2545F4914F6CDD1DULL;

/// Seedable generator with a pinned output stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform and normal variates are derived here rather than through
/// <random> distributions, whose algorithms are implementation-defined:
///   uniform() = (engine() >> 11) * 2^-53           in [0, 1)
///   normal()  = Box-Muller on two uniforms, both outputs used in turn
///   index(n)  = rejection sampling on engine() to avoid modulo bias
/// Reports regenerated from the same seed are therefore stable across
/// compilers and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed);

  double uniform();
  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t n);

  /// Independent child generator; the child's seed mixes this generator's
  /// seed with `stream` through splitmix64, so it does not advance *this.
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ejaopt
