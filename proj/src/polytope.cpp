#include "slicelab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slicelab/error.hpp"
#include "slicelab/simplex.hpp"
#include "slicelab/slice.hpp"

namespace slicelab {

namespace {

void check_descending(const std::vector<double>& lambda) {
  if (lambda.size() < kMinDim) throw Error(ErrorKind::InvalidArgument, "need at least two eigenvalues");
  if (lambda.size() > kMaxPolytopeDim) {
    throw Error(ErrorKind::TooLarge, "vertex enumeration is limited to n <= 8, got " + std::to_string(lambda.size()));
  }
  for (std::size_t k = 0; k + 1 < lambda.size(); ++k)
    if (!(lambda[k] > lambda[k + 1])) throw Error(ErrorKind::InvalidArgument, "lambda must be strictly descending");
}

template <class Visit>
void for_each_permutation(std::size_t n, Visit&& visit) {
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 1);
  do {
    visit(Permutation(pi));
  } while (std::next_permutation(pi.begin(), pi.end()));
}

// |det| by LU with partial pivoting.
double abs_det(std::vector<double> a, std::size_t k) {
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
    const double p = a[piv * k + c];
    if (p == 0.0) return 0.0;
    if (piv != c)
      for (std::size_t j = 0; j < k; ++j) std::swap(a[piv * k + j], a[c * k + j]);
    det *= p;
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a[r * k + c] / p;
      for (std::size_t j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
    }
  }
  return std::abs(det);
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : pi_(std::move(images)) {
  std::vector<bool> seen(pi_.size(), false);
  for (int v : pi_) {
    if (v < 1 || v > static_cast<int>(pi_.size()) || seen[v - 1]) {
      throw Error(ErrorKind::InvalidArgument, "image list is not a permutation of 1..n");
    }
    seen[v - 1] = true;
  }
}

std::vector<double> permute(const std::vector<double>& lambda, const Permutation& pi) {
  if (pi.size() != lambda.size()) throw Error(ErrorKind::DimensionMismatch, "permutation size mismatch");
  std::vector<double> out(lambda.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = lambda[pi.images()[k] - 1];
  return out;
}

VertexSet permutohedron_vertices(const std::vector<double>& lambda) {
  check_descending(lambda);
  VertexSet vs;
  vs.lambda = lambda;
  for_each_permutation(lambda.size(), [&](Permutation pi) {
    vs.points.push_back(permute(lambda, pi));
    vs.labels.push_back(std::move(pi));
  });
  vs.affine_dim = affine_dimension(vs.points);
  return vs;
}

std::vector<double> bfr_diagonal(const std::vector<double>& lambda, const Matrix& q) {
  const std::size_t n = lambda.size();
  if (q.size() != n) throw Error(ErrorKind::DimensionMismatch, "eigenvector matrix size mismatch");
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) d[i] += q(i, k) * lambda[k] * q(i, k);
  return d;
}

std::vector<double> bfr_map(const SymMatrix& s) {
  const SpectralDecomposition sd = spectral_decompose(s);
  return bfr_diagonal(sd.lambda, sd.q);
}

std::vector<double> nested_minors(const Matrix& q, const Permutation& pi) {
  const std::size_t n = q.size();
  if (pi.size() != n) throw Error(ErrorKind::DimensionMismatch, "permutation size mismatch");
  std::vector<double> minors(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> sub(k * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r * k + c] = q(static_cast<std::size_t>(pi(r + 1) - 1), c);
    minors[k - 1] = abs_det(std::move(sub), k);
  }
  return minors;
}

VertexSet accessible_vertices(const SymMatrix& s) {
  if (s.size() > kMaxPolytopeDim) throw Error(ErrorKind::TooLarge, "vertex enumeration is limited to n <= 8");
  const SpectralDecomposition sd = spectral_decompose(s);
  if (!is_irreducible(s)) throw Error(ErrorKind::NotIrreducible, "accessible vertices need an irreducible matrix");
  VertexSet vs;
  vs.lambda = sd.lambda;
  for_each_permutation(s.size(), [&](Permutation pi) {
    const std::vector<double> minors = nested_minors(sd.q, pi);
    const double smallest = *std::min_element(minors.begin(), minors.end());
    if (smallest > kMinorTol / 100.0 && smallest < kMinorTol * 100.0) vs.near_threshold.push_back(pi);
    if (smallest > kMinorTol) {
      vs.points.push_back(permute(sd.lambda, pi));
      vs.labels.push_back(std::move(pi));
    }
  });
  vs.affine_dim = affine_dimension(vs.points);
  return vs;
}

VertexSet spectral_polytope(const SymMatrix& s) {
  VertexSet acc = accessible_vertices(s);
  VertexSet out;
  out.lambda = acc.lambda;
  out.near_threshold = acc.near_threshold;
  for (std::size_t k = 0; k < acc.points.size(); ++k) {
    const bool dup = std::any_of(out.points.begin(), out.points.end(), [&](const auto& p) { return p == acc.points[k]; });
    if (dup) continue;
    out.points.push_back(acc.points[k]);
    out.labels.push_back(acc.labels[k]);
  }
  out.affine_dim = affine_dimension(out.points);
  return out;
}

int affine_dimension(const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) return 0;
  const std::size_t n = points.front().size();
  std::vector<double> center(n, 0.0);
  double scale = 0.0;
  for (const auto& p : points)
    for (std::size_t i = 0; i < n; ++i) {
      center[i] += p[i] / static_cast<double>(points.size());
      scale = std::max(scale, std::abs(p[i]));
    }
  // Modified Gram–Schmidt against an accumulated orthonormal basis.
  const double tol = 1e-9 * std::max(scale, 1.0);
  std::vector<std::vector<double>> basis;
  for (const auto& p : points) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = p[i] - center[i];
    for (const auto& b : basis) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += b[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > tol) {
      for (double& x : v) x /= norm;
      basis.push_back(std::move(v));
      if (basis.size() == n) break;
    }
  }
  return static_cast<int>(basis.size());
}

bool majorization_member(const std::vector<double>& p, const std::vector<double>& lambda) {
  constexpr double kTol = 1e-9;
  if (p.size() != lambda.size()) return false;
  std::vector<double> ps = p;
  std::vector<double> ls = lambda;
  std::sort(ps.begin(), ps.end(), std::greater<>());
  std::sort(ls.begin(), ls.end(), std::greater<>());
  double sp = 0.0;
  double sl = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    sp += ps[k];
    sl += ls[k];
    if (k + 1 < ps.size() && sp > sl + kTol) return false;
  }
  return std::abs(sp - sl) <= kTol;
}

bool hull_member(const std::vector<double>& p, const VertexSet& vs) {
  if (vs.points.empty()) throw Error(ErrorKind::InvalidArgument, "hull membership needs a nonempty vertex set");
  const std::size_t n = p.size();
  if (vs.points.front().size() != n) return false;
  const std::size_t m = vs.points.size();
  std::vector<std::vector<double>> a(n + 1, std::vector<double>(m, 0.0));
  std::vector<double> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = vs.points[j][i];
    b[i] = p[i];
  }
  std::fill(a[n].begin(), a[n].end(), 1.0);
  b[n] = 1.0;
  return lp_feasible(a, b, 1e-8);
}

std::vector<std::vector<double>> sum_zero_basis(std::size_t n) {
  std::vector<std::vector<double>> basis;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> u(n, 0.0);
    const double c = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) u[i] = c;
    u[k] = -static_cast<double>(k) * c;
    basis.push_back(std::move(u));
  }
  return basis;
}

}  // namespace slicelab
