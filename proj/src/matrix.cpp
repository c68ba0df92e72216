#include "slicelab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicelab/error.hpp"

namespace slicelab {

namespace {

void check_dim(std::size_t n) {
  if (n < kMinDim || n > kMaxDim) {
    throw Error(ErrorKind::InvalidArgument,
                "matrix dimension " + std::to_string(n) + " outside supported range [2, 12]");
  }
}

void check_same(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix sizes " + std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()) + " differ");
  }
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n) {
  check_dim(n);
  a_.assign(n * n, 0.0);
}

Matrix::Matrix(std::size_t n, std::vector<double> data) : n_(n), a_(std::move(data)) {
  check_dim(n);
  if (a_.size() != n * n) {
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(n * n) + " entries, got " +
                                                std::to_string(a_.size()));
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "matrix entry is not finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  std::vector<double> data;
  data.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "matrix rows must form a square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(n, std::move(data));
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::diag() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::norm() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::offdiag_norm() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& b) {
  check_same(*this, b);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  check_same(*this, b);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double c) noexcept {
  for (double& v : a_) v *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same(a, b);
  const std::size_t n = a.size();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  check_same(a, b);
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
  return m;
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  const std::size_t n = m_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
}

OrthMatrix::OrthMatrix(Matrix m) : m_(std::move(m)) {
  const std::size_t n = m_.size();
  const double tol = 1e-12 * static_cast<double>(n);
  const Matrix gram = m_.transposed() * m_;
  if (max_abs_diff(gram, Matrix::identity(n)) > tol) {
    throw Error(ErrorKind::InvalidArgument, "matrix is not orthogonal to 1e-12*n");
  }
}

UpperTriMatrix::UpperTriMatrix(Matrix m) : m_(std::move(m)) {
  const std::size_t n = m_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m_(i, i) > 0.0)) throw Error(ErrorKind::InvalidArgument, "upper triangular factor needs a positive diagonal");
    for (std::size_t j = 0; j < i; ++j) m_(i, j) = 0.0;
  }
}

Matrix UpperTriMatrix::inverse() const {
  // Back substitution column by column; the inverse is again upper triangular.
  const std::size_t n = m_.size();
  Matrix inv(n);
  for (std::size_t c = 0; c < n; ++c) {
    inv(c, c) = 1.0 / m_(c, c);
    for (std::size_t ii = c; ii-- > 0;) {
      double s = 0.0;
      for (std::size_t k = ii + 1; k <= c; ++k) s += m_(ii, k) * inv(k, c);
      inv(ii, c) = -s / m_(ii, ii);
    }
  }
  return inv;
}

SymMatrix conjugate(const SymMatrix& s, const Matrix& q) {
  return SymMatrix(q.transposed() * s.mat() * q);
}

}  // namespace slicelab
