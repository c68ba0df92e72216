#include "slicelab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slicelab/error.hpp"

namespace slicelab {

QrFactors qr_factor(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix r = m;
  Matrix q = Matrix::identity(n);
  std::vector<double> v(n);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < n; ++i) alpha += r(i, k) * r(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    // Reflect x onto -sign(x_k)·‖x‖·e_k to avoid cancellation.
    if (r(k, k) > 0.0) alpha = -alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i] * r(i, j);
      dot *= beta;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= dot * v[i];
    }
    // q ← q·H_k
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= dot * v[j];
    }
  }

  const double threshold = 1e-12 * m.norm();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(r(i, i)) > threshold)) {
      throw Error(ErrorKind::SingularMatrix,
                  "R diagonal entry " + std::to_string(i) + " below 1e-12*|m|; matrix is not invertible");
    }
    if (r(i, i) < 0.0) {
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) = -r(i, j);
        q(j, i) = -q(j, i);
      }
    }
  }
  return QrFactors{OrthMatrix(std::move(q)), UpperTriMatrix(std::move(r))};
}

namespace {

// Eigenvalues on the diagonal of a, eigenvectors in the columns of v.
void jacobi_sweeps(Matrix& a, Matrix& v) {
  const std::size_t n = a.size();
  const double target = 1e-13 * a.frobenius();
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (a.offdiag_norm() <= target) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  throw Error(ErrorKind::InvalidArgument, "Jacobi eigensolver did not converge");
}

}  // namespace

SymMatrix SpectralDecomposition::reassemble(const std::vector<double>& values) const {
  const std::size_t n = lambda.size();
  if (values.size() != n) throw Error(ErrorKind::DimensionMismatch, "spectral values length mismatch");
  Matrix out(n);
  const Matrix& qm = q.mat();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += qm(k, i) * values[k] * qm(k, j);
      out(i, j) = acc;
      out(j, i) = acc;
    }
  return SymMatrix(out);
}

std::vector<double> eigenvalues(const SymMatrix& s) {
  Matrix a = s.mat();
  Matrix v = Matrix::identity(s.size());
  jacobi_sweeps(a, v);
  std::vector<double> d = a.diag();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

SpectralDecomposition spectral_decompose(const SymMatrix& s) {
  const std::size_t n = s.size();
  Matrix a = s.mat();
  Matrix v = Matrix::identity(n);
  jacobi_sweeps(a, v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  std::vector<double> lambda(n);
  Matrix q(n);
  for (std::size_t k = 0; k < n; ++k) {
    lambda[k] = a(order[k], order[k]);
    for (std::size_t j = 0; j < n; ++j) q(k, j) = v(j, order[k]);
  }

  const double gap_tol = kSimplicityTol * s.norm();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (lambda[k] - lambda[k + 1] <= gap_tol) {
      throw Error(ErrorKind::DegenerateSpectrum, "eigenvalues " + std::to_string(lambda[k]) + " and " +
                                                     std::to_string(lambda[k + 1]) + " are not separated");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lead = 0;
    while (lead < n && std::abs(q(k, lead)) <= 1e-12) ++lead;
    if (lead < n && q(k, lead) < 0.0)
      for (std::size_t j = 0; j < n; ++j) q(k, j) = -q(k, j);
  }
  return SpectralDecomposition{std::move(lambda), OrthMatrix(std::move(q))};
}

SymMatrix apply_function(const SymMatrix& s, const SpectralFunction& f) {
  if (std::holds_alternative<SpectralFunction::Identity>(f.kind())) return s;
  const SpectralDecomposition sd = spectral_decompose(s);
  if (f.requires_positive_spectrum() && !(sd.lambda.back() > 0.0)) {
    throw Error(ErrorKind::DomainViolation,
                f.to_string() + " needs a positive spectrum; smallest eigenvalue is " + std::to_string(sd.lambda.back()));
  }
  std::vector<double> values(sd.lambda.size());
  std::transform(sd.lambda.begin(), sd.lambda.end(), values.begin(), [&](double x) { return f(x); });
  return sd.reassemble(values);
}

Matrix pi_a(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      a(i, j) = m(i, j);
      a(j, i) = -m(i, j);
    }
  return a;
}

Matrix pi_u(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = (i == j) ? m(i, i) : m(i, j) + m(j, i);
  return u;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "commutator of different sizes");
  return a * b - b * a;
}

}  // namespace slicelab
