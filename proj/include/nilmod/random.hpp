#ifndef NILMOD_RANDOM_HPP
#define NILMOD_RANDOM_HPP

#include <cstdint>
#include <random>

#include "nilmod/exactalg.hpp"
#include "nilmod/multipoly.hpp"

namespace nilmod {

// Seeded generator with platform-independent draws: the standard
// distributions are implementation-defined, so bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }
  /// Nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Random polynomial of total degree <= degree_bound with small integer
/// coefficients. Degree bound 0 yields a nonzero constant.
Poly random_poly(std::size_t n, std::uint32_t degree_bound, Rng& rng);

/// Random invertible d x d integer matrix (product of unit triangular factors
/// and a permutation), so its inverse is cheap to verify.
Matrix random_invertible(std::size_t d, Rng& rng);

Vec random_vec(std::size_t d, Rng& rng, std::int64_t bound = 3);

}  // namespace nilmod

#endif  // NILMOD_RANDOM_HPP
