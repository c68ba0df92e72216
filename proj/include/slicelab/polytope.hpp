#pragma once

#include <vector>

#include "slicelab/matcore.hpp"

namespace slicelab {

/// Bijection of {1..n}, stored as its image list.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  const std::vector<int>& images() const noexcept { return pi_; }
  std::size_t size() const noexcept { return pi_.size(); }
  int operator()(std::size_t k) const noexcept { return pi_[k - 1]; }  // 1-based
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> pi_;
};

/// λ_π = (λ_{π(1)}, …, λ_{π(n)}).
std::vector<double> permute(const std::vector<double>& lambda, const Permutation& pi);

struct VertexSet {
  std::vector<double> lambda;
  std::vector<std::vector<double>> points;
  std::vector<Permutation> labels;
  int affine_dim = 0;
  /// Permutations whose smallest nested minor fell within a factor 100 of
  /// the zero threshold; their classification is numerically fragile.
  std::vector<Permutation> near_threshold;
};

inline constexpr std::size_t kMaxPolytopeDim = 8;
inline constexpr double kMinorTol = 1e-10;

VertexSet permutohedron_vertices(const std::vector<double>& lambda);

/// diag(q·Λ·qᵀ) for the descending decomposition s = qᵀΛq.
std::vector<double> bfr_map(const SymMatrix& s);

/// Same map from explicit spectral data; q rows may carry any signs.
std::vector<double> bfr_diagonal(const std::vector<double>& lambda, const Matrix& q);

/// |det| of the k×k minor of q with rows π(1..k) and columns 1..k, k = 1..n.
std::vector<double> nested_minors(const Matrix& q, const Permutation& pi);

/// λ_π for every π whose nested minors all exceed kMinorTol in magnitude.
VertexSet accessible_vertices(const SymMatrix& s);

/// Accessible vertices, deduplicated, with affine hull dimension.
VertexSet spectral_polytope(const SymMatrix& s);

/// Rank of the centered point cloud.
int affine_dimension(const std::vector<std::vector<double>>& points);

/// Schur–Horn membership in the permutohedron of lambda via majorization.
bool majorization_member(const std::vector<double>& p, const std::vector<double>& lambda);

/// p ∈ conv(vs.points), decided by phase-1 simplex.
bool hull_member(const std::vector<double>& p, const VertexSet& vs);

/// Orthonormal basis of the sum-zero hyperplane (Helmert rows), n−1 × n.
std::vector<std::vector<double>> sum_zero_basis(std::size_t n);

}  // namespace slicelab
