#pragma once

#include <vector>

#include "slicelab/matcore.hpp"

namespace slicelab {

/// Positive spectral samples (f(λ₁), …, f(λₙ)) of a positive function,
/// indexed by descending eigenvalue. Stored normalized to unit 2-norm, so
/// w and c·w give the same object.
class SliceWeights {
 public:
  explicit SliceWeights(std::vector<double> w);
  const std::vector<double>& values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }

 private:
  std::vector<double> w_;
};

/// Sampled matrix path: S^(k) sequences or S(t) samples.
struct Trajectory {
  std::vector<double> times;
  std::vector<SymMatrix> states;

  /// Throws InvalidArgument unless t exceeds the last time (or precedes it,
  /// for a backward trajectory) and the dimension matches.
  void append(double t, SymMatrix s);
  std::size_t size() const noexcept { return states.size(); }
};

/// S' = RQ for S = QR.
SymMatrix qr_step(const SymMatrix& s);

/// Conjugation of s by the Q factor of f(s). Requires f > 0 on σ(s).
SymMatrix functional_step(const SymMatrix& s, const SpectralFunction& f);

/// functional_step(s, x^(1/k)).
SymMatrix fractional_step(const SymMatrix& s, long k);

/// X(S) = [S, Π_a log S].
SymMatrix interpolating_field(const SymMatrix& s);

/// times 0..steps, states s, f-step(s), f-step(f-step(s)), ...
Trajectory iterate_qr(const SymMatrix& s, long steps, const SpectralFunction& f);

/// The slice element attached to the positive function with spectral
/// samples w. Requires s irreducible with simple spectrum.
SymMatrix slice_point(const SymMatrix& s, const SliceWeights& w);

/// No proper coordinate subspace is s-invariant. Checked by enumerating all
/// proper index subsets against the zero pattern of s.
bool is_irreducible(const SymMatrix& s);

/// Connected components of the coupling graph (edges where
/// |s_ij| > 1e-12·‖s‖), each sorted ascending.
std::vector<std::vector<std::size_t>> coupling_components(const SymMatrix& s);

}  // namespace slicelab
