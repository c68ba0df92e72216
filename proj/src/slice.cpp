#include "slicelab/slice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicelab/error.hpp"

namespace slicelab {

namespace {

constexpr double kCouplingTol = 1e-12;

bool coupled(const SymMatrix& s, std::size_t i, std::size_t j, double tol) { return std::abs(s(i, j)) > tol; }

}  // namespace

SliceWeights::SliceWeights(std::vector<double> w) : w_(std::move(w)) {
  double norm2 = 0.0;
  for (double v : w_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::DomainViolation, "slice weights must be positive");
    norm2 += v * v;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : w_) v *= inv;
}

void Trajectory::append(double t, SymMatrix s) {
  if (!states.empty()) {
    if (s.size() != states.front().size()) throw Error(ErrorKind::DimensionMismatch, "trajectory dimension changed");
    if (t == times.back()) throw Error(ErrorKind::InvalidArgument, "trajectory times must be strictly monotone");
    if (times.size() >= 2 && ((t > times.back()) != (times.back() > times[times.size() - 2]))) {
      throw Error(ErrorKind::InvalidArgument, "trajectory times must be strictly monotone");
    }
  }
  times.push_back(t);
  states.push_back(std::move(s));
}

SymMatrix qr_step(const SymMatrix& s) {
  const QrFactors f = qr_factor(s);
  return SymMatrix(f.r.mat() * f.q.mat());
}

SymMatrix functional_step(const SymMatrix& s, const SpectralFunction& f) {
  const SpectralDecomposition sd = spectral_decompose(s);
  std::vector<double> values(sd.lambda.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = f(sd.lambda[k]);
    if (!(values[k] > 0.0)) {
      throw Error(ErrorKind::DomainViolation,
                  f.to_string() + " is not positive at eigenvalue " + std::to_string(sd.lambda[k]));
    }
  }
  const QrFactors qr = qr_factor(sd.reassemble(values));
  return conjugate(s, qr.q);
}

SymMatrix fractional_step(const SymMatrix& s, long k) {
  if (k <= 0) throw Error(ErrorKind::InvalidArgument, "fractional step needs a positive integer k");
  return functional_step(s, SpectralFunction::power(1, k));
}

SymMatrix interpolating_field(const SymMatrix& s) {
  const SymMatrix log_s = apply_function(s, SpectralFunction::log());
  return SymMatrix(commutator(s, pi_a(log_s)));
}

Trajectory iterate_qr(const SymMatrix& s, long steps, const SpectralFunction& f) {
  if (steps < 0) throw Error(ErrorKind::InvalidArgument, "step count must be nonnegative");
  Trajectory traj;
  traj.append(0.0, s);
  SymMatrix cur = s;
  for (long k = 1; k <= steps; ++k) {
    cur = functional_step(cur, f);
    traj.append(static_cast<double>(k), cur);
  }
  return traj;
}

SymMatrix slice_point(const SymMatrix& s, const SliceWeights& w) {
  if (w.size() != s.size()) throw Error(ErrorKind::DimensionMismatch, "weight vector length differs from matrix size");
  if (!is_irreducible(s)) throw Error(ErrorKind::NotIrreducible, "slice coordinates need an irreducible matrix");
  const SpectralDecomposition sd = spectral_decompose(s);
  const QrFactors qr = qr_factor(sd.reassemble(w.values()));
  return conjugate(s, qr.q);
}

bool is_irreducible(const SymMatrix& s) {
  const std::size_t n = s.size();
  const double tol = kCouplingTol * s.norm();
  // E = subset bitmask; span(E) is invariant iff s_ij = 0 for i ∉ E, j ∈ E.
  const unsigned full = (1u << n) - 1u;
  for (unsigned subset = 1; subset < full; ++subset) {
    bool invariant = true;
    for (std::size_t j = 0; j < n && invariant; ++j) {
      if (!(subset & (1u << j))) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(subset & (1u << i)) && coupled(s, i, j, tol)) {
          invariant = false;
          break;
        }
      }
    }
    if (invariant) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> coupling_components(const SymMatrix& s) {
  const std::size_t n = s.size();
  const double tol = kCouplingTol * s.norm();
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t root = 0; root < n; ++root) {
    if (label[root] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<std::size_t> stack{root};
    label[root] = id;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comps.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] < 0 && j != i && coupled(s, i, j, tol)) {
          label[j] = id;
          stack.push_back(j);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

}  // namespace slicelab
