#pragma once

#include <cstdint>
#include <limits>

#include "cartan/matcore.hpp"

namespace cartan {

/// Counter-based generator: the k-th output is a pure function of
/// (seed, stream, k). Two generators with different stream ids are
/// independent, so parallel workers can each own one without coordination.
class CounterRng {
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0)
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }

  std::uint64_t counter() const { return counter_; }

  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal (Box–Muller, no cached state).
  double normal();

private:
  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

Mat gaussian_matrix(CounterRng& rng, long rows, long cols);
Vec gaussian_vector(CounterRng& rng, long n);

/// Haar-distributed rotation: QR of a Gaussian matrix with the diagonal of R
/// made positive, then the last column negated if det = −1.
Mat random_rotation_matrix(CounterRng& rng, long n);

/// Haar-distributed orthogonal matrix (no determinant correction).
Mat random_orthogonal_matrix(CounterRng& rng, long n);

/// Uniformly random unit vector.
Vec random_unit_vector(CounterRng& rng, long n);

} // namespace cartan
