#pragma once

#include <cstdint>
#include <random>

#include "wcone/measure.hpp"
#include "wcone/space.hpp"

namespace wcone {

/// Deterministic random source. The variate transforms are hand-rolled on
/// top of std::mt19937_64 so that every stream is byte-stable across
/// platforms and standard-library versions (std::uniform_real_distribution
/// and friends make no such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for one trial of a seeded experiment; derived via
  /// splitmix64 so trials can be reordered or rerun in isolation.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller; both variates used).
  double normal();
  /// Uniform index in {0, ..., n-1} by rejection (exact, unbiased).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// A random point of any space: uniform index / uniform angle / standard
/// normal coordinates / radius uniform in [0, 2) over a random base point.
Point sample_point(const Space& space, Rng& rng);

/// A random measure with 1..max_support atoms. Weights are either exactly
/// 1/k or normalized uniforms bounded away from zero.
DiscreteMeasure sample_measure(const Space& space, std::size_t max_support,
                               Rng& rng, bool uniform_weights = false);

/// A random n-point metric space realized by n points drawn uniformly from
/// the square [0, 4]^2 with their Euclidean distances (so the triangle
/// inequality holds exactly and distances beyond pi occur).
Space sample_finite_space(std::size_t n, Rng& rng);

/// A random zero-mean measure on Euclidean(dim) with unit second moment
/// about the origin and at least two atoms.
DiscreteMeasure sample_normalized_measure(std::size_t dim,
                                          std::size_t max_support, Rng& rng);

/// A random cone measure rescaled to lie at W2-distance exactly ~1 from the
/// vertex (a unit direction).
DiscreteMeasure sample_unit_direction(const Space& cone_space,
                                      std::size_t max_support, Rng& rng);

}  // namespace wcone
