#pragma once

#include <vector>

#include "slicelab/matrix.hpp"
#include "slicelab/spectral_function.hpp"

namespace slicelab {

/// m = q·r with diag(r) > 0. This normalization makes the factorization unique.
struct QrFactors {
  OrthMatrix q;
  UpperTriMatrix r;
};

/// Householder QR followed by the sign fix q ← qD, r ← Dr.
/// Throws SingularMatrix when some |r_ii| ≤ 1e-12·‖m‖.
QrFactors qr_factor(const Matrix& m);

/// s = qᵀ·diag(lambda)·q with lambda strictly descending; row k of q is the
/// unit eigenvector of lambda[k], its first entry above 1e-12 in magnitude
/// taken positive.
struct SpectralDecomposition {
  std::vector<double> lambda;
  OrthMatrix q;

  /// qᵀ·diag(values)·q for arbitrary values indexed like lambda.
  SymMatrix reassemble(const std::vector<double>& values) const;
  SymMatrix reconstruct() const { return reassemble(lambda); }
};

inline constexpr double kSimplicityTol = 1e-9;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-13·‖s‖_F. Throws DegenerateSpectrum if two eigenvalues are closer
/// than 1e-9·‖s‖.
SpectralDecomposition spectral_decompose(const SymMatrix& s);

/// Eigenvalues only, sorted descending; no simplicity requirement.
std::vector<double> eigenvalues(const SymMatrix& s);

/// f(s) through the spectral decomposition. Throws DomainViolation if f is
/// not defined on σ(s).
SymMatrix apply_function(const SymMatrix& s, const SpectralFunction& f);

/// Skew part of the skew + upper-triangular splitting.
Matrix pi_a(const Matrix& m);
/// Upper triangular part, m − pi_a(m).
Matrix pi_u(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace slicelab
