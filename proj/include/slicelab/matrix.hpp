#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace slicelab {

inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 12;

/// Dense real square matrix, row-major.
class Matrix {
 public:
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return a_; }

  Matrix transposed() const;
  std::vector<double> diag() const;
  double trace() const noexcept;
  /// Largest absolute entry; the matrix norm used for all relative tolerances.
  double norm() const noexcept;
  double frobenius() const noexcept;
  /// Frobenius norm of the strictly off-diagonal part.
  double offdiag_norm() const noexcept;

  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  Matrix& operator*=(double c) noexcept;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double c) { return a *= c; }
  friend Matrix operator*(double c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Real symmetric matrix. Construction symmetrizes by averaging, so the
/// stored entries are exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    return SymMatrix(Matrix::from_rows(rows));
  }
  static SymMatrix diagonal(std::span<const double> d) { return SymMatrix(Matrix::diagonal(d)); }

  const Matrix& mat() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)

  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  double norm() const noexcept { return m_.norm(); }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

/// Orthogonal matrix, QᵀQ = I to 1e-12·n per entry (checked on construction).
class OrthMatrix {
 public:
  explicit OrthMatrix(Matrix m);
  const Matrix& mat() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

 private:
  Matrix m_;
};

/// Upper triangular with strictly positive diagonal. The strictly lower part
/// is zeroed on construction; a non-positive diagonal entry is rejected.
class UpperTriMatrix {
 public:
  explicit UpperTriMatrix(Matrix m);
  const Matrix& mat() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  Matrix inverse() const;

 private:
  Matrix m_;
};

/// qᵀ·s·q, symmetrized.
SymMatrix conjugate(const SymMatrix& s, const Matrix& q);

}  // namespace slicelab
