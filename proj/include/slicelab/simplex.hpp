#pragma once

#include <vector>

namespace slicelab {

/// Is {x ≥ 0 : A·x = b} nonempty? Phase-1 simplex on a dense tableau with
/// Bland's rule; feasible when the optimal artificial sum is ≤ tol.
/// A is row-major with rows.size() == b.size().
bool lp_feasible(const std::vector<std::vector<double>>& a, const std::vector<double>& b, double tol = 1e-8);

}  // namespace slicelab
