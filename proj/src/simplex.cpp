#include "slicelab/simplex.hpp"

#include <cmath>
#include <limits>

#include "slicelab/error.hpp"

namespace slicelab {

bool lp_feasible(const std::vector<std::vector<double>>& a, const std::vector<double>& b, double tol) {
  const std::size_t m = b.size();
  if (a.size() != m) throw Error(ErrorKind::DimensionMismatch, "constraint rows and right-hand side differ");
  if (m == 0) return true;
  const std::size_t nx = a.front().size();
  for (const auto& row : a)
    if (row.size() != nx) throw Error(ErrorKind::DimensionMismatch, "ragged constraint matrix");

  // Columns: nx structural, m artificial, then the right-hand side.
  const std::size_t cols = nx + m + 1;
  const std::size_t rhs = nx + m;
  std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nx; ++j) tab[i][j] = sign * a[i][j];
    tab[i][nx + i] = 1.0;
    tab[i][rhs] = sign * b[i];
    basis[i] = nx + i;
  }
  // Objective row holds reduced costs of min Σ artificials: −(sum of rows).
  for (std::size_t j = 0; j < cols; ++j) {
    if (j >= nx && j < rhs) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
    tab[m][j] = -s;
  }

  constexpr double kEps = 1e-12;
  const std::size_t max_iter = 50 * (nx + m) + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (tab[m][j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] > kEps) {
        const double ratio = tab[i][rhs] / tab[i][enter];
        if (ratio < best - kEps || (std::abs(ratio - best) <= kEps && leave < m && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    // Phase-1 objective is bounded below by 0, so an entering column always has a pivot.
    if (leave == m) break;

    const double piv = tab[leave][enter];
    for (double& v : tab[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tab[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }
  return -tab[m][rhs] <= tol;
}

}  // namespace slicelab
