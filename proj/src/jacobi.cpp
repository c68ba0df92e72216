#include "slicelab/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicelab/error.hpp"
#include "slicelab/matcore.hpp"

namespace slicelab {

namespace {

constexpr double kWeightFloor = 1e-10;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void MoserCoordinates::validate() const {
  const std::size_t n = lambda.size();
  if (w.size() != n) throw Error(ErrorKind::InvalidArgument, "lambda and w differ in length");
  if (n < kMinDim || n > kMaxDim) throw Error(ErrorKind::InvalidArgument, "Moser coordinates need 2 <= n <= 12");
  const double gap_tol = kSimplicityTol * max_abs(lambda);
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(lambda[k]) || !std::isfinite(w[k])) throw Error(ErrorKind::InvalidArgument, "non-finite Moser data");
    if (k + 1 < n && !(lambda[k] - lambda[k + 1] > gap_tol)) {
      throw Error(ErrorKind::InvalidArgument, "lambda must be strictly descending");
    }
    if (!(w[k] > kWeightFloor)) {
      throw Error(ErrorKind::InvalidArgument, "w entry " + std::to_string(k) + " is not strictly positive");
    }
  }
  if (std::abs(std::sqrt(dot(w, w)) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "w must have unit norm");
}

bool is_jacobi(const SymMatrix& s) {
  const std::size_t n = s.size();
  const double tol = 1e-14 * s.norm();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      if (std::abs(s(i, j)) > tol) return false;
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(s(k, k + 1) > 0.0)) return false;
  return true;
}

MoserCoordinates moser_coordinates(const SymMatrix& j) {
  if (!is_jacobi(j)) throw Error(ErrorKind::NotJacobi, "Moser coordinates need a Jacobi matrix");
  const SpectralDecomposition sd = spectral_decompose(j);
  const std::size_t n = j.size();
  MoserCoordinates mc{sd.lambda, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    mc.w[k] = sd.q(k, 0);
    if (!(mc.w[k] > 0.0)) {
      throw Error(ErrorKind::NotJacobi, "eigenvector " + std::to_string(k) + " has a vanishing first coordinate");
    }
  }
  const double norm = std::sqrt(dot(mc.w, mc.w));
  for (double& v : mc.w) v /= norm;
  return mc;
}

SymMatrix moser_reconstruct(const MoserCoordinates& mc) {
  mc.validate();
  const std::size_t n = mc.lambda.size();
  const double tol = 1e-12 * max_abs(mc.lambda);

  std::vector<std::vector<double>> basis;
  basis.reserve(n);
  basis.push_back(mc.w);
  Matrix t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<double>& v = basis[k];
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = mc.lambda[i] * v[i];
    t(k, k) = dot(v, u);
    if (k + 1 == n) break;
    // Two passes of classical Gram–Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(b, u);
        for (std::size_t i = 0; i < n; ++i) u[i] -= c * b[i];
      }
    }
    const double beta = std::sqrt(dot(u, u));
    if (!(beta > tol)) {
      throw Error(ErrorKind::ReconstructionFailure,
                  "Lanczos off-diagonal " + std::to_string(k + 1) + " collapsed to " + std::to_string(beta));
    }
    t(k, k + 1) = beta;
    t(k + 1, k) = beta;
    for (double& x : u) x /= beta;
    basis.push_back(std::move(u));
  }
  return SymMatrix(t);
}

}  // namespace slicelab
