#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slicelab/matrix.hpp"

namespace slicelab {

/// The single seeded source behind every random test object.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }
  double normal();
  double uniform(double lo, double hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

SymMatrix random_symmetric(std::size_t n, Rng& rng);
/// Gaussian Q factor with det = +1.
Matrix random_orthogonal(std::size_t n, Rng& rng);
/// Qᵀ·diag(lambda)·Q for a random orthogonal Q.
SymMatrix random_conjugate(const std::vector<double>& lambda, Rng& rng);
/// Spectrum drawn from [lo, hi] with gaps of at least (hi−lo)/(4n).
std::vector<double> random_spectrum(std::size_t n, double lo, double hi, Rng& rng);
SymMatrix random_spd(std::size_t n, Rng& rng);
/// Diagonal N(0,1), off-diagonal uniform in [0.3, 1.5].
SymMatrix random_jacobi(std::size_t n, Rng& rng);
/// Random Jacobi matrix with the given descending spectrum (random Moser weights).
SymMatrix random_jacobi_with_spectrum(const std::vector<double>& lambda, Rng& rng);
/// Strictly positive vector with entries in [0.1, 1].
std::vector<double> random_positive(std::size_t n, Rng& rng);

}  // namespace slicelab
