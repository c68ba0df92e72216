#include "slicelab/random.hpp"

#include <algorithm>
#include <cmath>

#include "slicelab/jacobi.hpp"
#include "slicelab/matcore.hpp"

namespace slicelab {

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

SymMatrix random_symmetric(std::size_t n, Rng& rng) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = rng.normal();
      m(j, i) = m(i, j);
    }
  return SymMatrix(m);
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
  Matrix q = qr_factor(g).q.mat();
  // Flip one column if needed so that det q = +1 (det q = sign det g).
  Matrix lu = q;
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(lu(r, c)) > std::abs(lu(piv, c))) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(c, j));
      det = -det;
    }
    det *= lu(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = lu(r, c) / lu(c, c);
      for (std::size_t j = c; j < n; ++j) lu(r, j) -= f * lu(c, j);
    }
  }
  if (det < 0.0)
    for (std::size_t i = 0; i < n; ++i) q(i, 0) = -q(i, 0);
  return q;
}

SymMatrix random_conjugate(const std::vector<double>& lambda, Rng& rng) {
  const Matrix q = random_orthogonal(lambda.size(), rng);
  return conjugate(SymMatrix::diagonal(lambda), q);
}

std::vector<double> random_spectrum(std::size_t n, double lo, double hi, Rng& rng) {
  const double min_gap = (hi - lo) / (4.0 * static_cast<double>(n));
  std::vector<double> l;
  while (l.size() < n) {
    const double v = rng.uniform(lo, hi);
    if (std::all_of(l.begin(), l.end(), [&](double x) { return std::abs(x - v) >= min_gap; })) l.push_back(v);
  }
  std::sort(l.begin(), l.end(), std::greater<>());
  return l;
}

SymMatrix random_spd(std::size_t n, Rng& rng) { return random_conjugate(random_spectrum(n, 0.5, 3.0, rng), rng); }

SymMatrix random_jacobi(std::size_t n, Rng& rng) {
  Matrix m(n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = rng.normal();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    m(k, k + 1) = rng.uniform(0.3, 1.5);
    m(k + 1, k) = m(k, k + 1);
  }
  return SymMatrix(m);
}

std::vector<double> random_positive(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& v : w) v = rng.uniform(0.1, 1.0);
  return w;
}

SymMatrix random_jacobi_with_spectrum(const std::vector<double>& lambda, Rng& rng) {
  std::vector<double> w = random_positive(lambda.size(), rng);
  double norm = 0.0;
  for (double v : w) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : w) v /= norm;
  return moser_reconstruct(MoserCoordinates{lambda, w});
}

}  // namespace slicelab
