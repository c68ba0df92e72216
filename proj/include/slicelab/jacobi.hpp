#pragma once

#include <vector>

#include "slicelab/matrix.hpp"

namespace slicelab {

/// Moser's chart on Jacobi matrices: the spectrum and the first components
/// of the eigenvectors, normalized into the open positive octant of the
/// unit sphere.
struct MoserCoordinates {
  std::vector<double> lambda;  // strictly descending
  std::vector<double> w;       // w_k > 0, ‖w‖₂ = 1

  /// Throws InvalidArgument if the invariants fail (gaps ≤ 1e-9·max|λ|,
  /// some w_k ≤ 1e-10, or ‖w‖₂ off by more than 1e-12).
  void validate() const;
};

/// Tridiagonal with strictly positive off-diagonal.
bool is_jacobi(const SymMatrix& s);

MoserCoordinates moser_coordinates(const SymMatrix& j);

/// Lanczos on diag(lambda) from w with full reorthogonalization.
/// Throws ReconstructionFailure when an off-diagonal drops below 1e-12·max|λ|.
SymMatrix moser_reconstruct(const MoserCoordinates& mc);

}  // namespace slicelab
