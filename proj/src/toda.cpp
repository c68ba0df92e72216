#include "slicelab/toda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slicelab/error.hpp"

namespace slicelab {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kOverflowGuard = 300.0;
constexpr double kTridiagonalTol = 1e-11;

std::size_t step_count(double t, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "step size must be positive");
  if (t == 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(std::abs(t) / dt - 1e-9));
}

// Q factor of qᵀ·diag(e^{exps})·q assembled from ratios of exponentials.
// With the eigen-rows permuted so exps descend, qp = L·U gives
// qpᵀ·W·qp = qpᵀ·(W L W⁻¹)·(W U), and W L W⁻¹ only involves e^{exps_i − exps_j} ≤ 1.
// Returns false when a leading minor of qp vanishes.
bool spectral_basis_conjugator(const SpectralDecomposition& sd, const std::vector<double>& exps, Matrix& out) {
  const std::size_t n = exps.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exps[a] > exps[b]; });

  Matrix qp(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) qp(k, j) = sd.q(order[k], j);

  Matrix lower = Matrix::identity(n);
  Matrix upper(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) {
      double acc = qp(k, j);
      for (std::size_t m = 0; m < k; ++m) acc -= lower(k, m) * upper(m, j);
      upper(k, j) = acc;
    }
    if (std::abs(upper(k, k)) < kPivotTol) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      double acc = qp(i, k);
      for (std::size_t m = 0; m < k; ++m) acc -= lower(i, m) * upper(m, k);
      lower(i, k) = acc / upper(k, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) lower(i, j) *= std::exp(exps[order[i]] - exps[order[j]]);

  const QrFactors qr = qr_factor(qp.transposed() * lower);
  out = qr.q.mat();
  for (std::size_t j = 0; j < n; ++j)
    if (upper(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) out(i, j) = -out(i, j);
  return true;
}

Matrix naive_conjugator(const SpectralDecomposition& sd, const std::vector<double>& exps) {
  double top = exps.front();
  for (double e : exps) {
    if (std::abs(e) > kOverflowGuard) {
      throw Error(ErrorKind::DomainViolation, "|t*g(lambda)| = " + std::to_string(std::abs(e)) +
                                                  " exceeds the overflow guard of 300");
    }
    top = std::max(top, e);
  }
  std::vector<double> w(exps.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(exps[k] - top);
  return qr_factor(sd.reassemble(w)).q.mat();
}

void check_same_size(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "positions and velocities differ in length");
  if (x.size() < kMinDim) throw Error(ErrorKind::InvalidArgument, "Toda lattice needs at least two particles");
}

TodaState axpy(const TodaState& s, double h, const ParticleField& k) {
  TodaState out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.x[i] += h * k.dx[i];
    out.y[i] += h * k.dy[i];
  }
  return out;
}

}  // namespace

TodaState::TodaState(std::vector<double> x_, std::vector<double> y_) : x(std::move(x_)), y(std::move(y_)) {
  check_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error(ErrorKind::InvalidArgument, "Toda state is not finite");
  }
}

TodaState TodaState::canonical() const {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  TodaState out = *this;
  for (double& v : out.x) v -= mean;
  return out;
}

FlowSpec::FlowSpec(SpectralFunction g_, double t_final_, double dt_, FlowMethod method_)
    : g(std::move(g_)), t_final(t_final_), dt(dt_), method(method_) {
  if (!(dt > 0.0) || !std::isfinite(t_final)) throw Error(ErrorKind::InvalidArgument, "flow needs dt > 0 and finite t");
  if (t_final > 0.0 && dt > t_final) throw Error(ErrorKind::InvalidArgument, "dt must not exceed t_final");
}

double hamiltonian(const TodaState& st) {
  double h = 0.0;
  for (double v : st.y) h += 0.5 * v * v;
  for (std::size_t k = 0; k + 1 < st.size(); ++k) h += std::exp(st.x[k] - st.x[k + 1]);
  return h;
}

SymMatrix flaschka(const TodaState& st) {
  const std::size_t n = st.size();
  Matrix j(n);
  for (std::size_t k = 0; k < n; ++k) j(k, k) = -st.y[k] / 2.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double b = std::exp((st.x[k] - st.x[k + 1]) / 2.0) / 2.0;
    j(k, k + 1) = b;
    j(k + 1, k) = b;
  }
  return SymMatrix(j);
}

TodaState inverse_flaschka(const SymMatrix& j) {
  const std::size_t n = j.size();
  const double tol = kTridiagonalTol * j.norm();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 2; c < n; ++c)
      if (std::abs(j(r, c)) > tol) throw Error(ErrorKind::NotJacobi, "matrix is not tridiagonal");
  std::vector<double> x(n, 0.0);
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = -2.0 * j(k, k);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double b = j(k, k + 1);
    if (!(b > 0.0)) throw Error(ErrorKind::NotJacobi, "off-diagonal entry " + std::to_string(k + 1) + " is not positive");
    x[k + 1] = x[k] - 2.0 * std::log(2.0 * b);
  }
  return TodaState(std::move(x), std::move(y)).canonical();
}

ParticleField particle_field(const TodaState& st) {
  const std::size_t n = st.size();
  ParticleField f{st.y, std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double bond = std::exp(st.x[k] - st.x[k + 1]);
    f.dy[k] -= bond;
    f.dy[k + 1] += bond;
  }
  return f;
}

SymMatrix toda_field(const SymMatrix& s, const SpectralFunction& g) {
  return SymMatrix(commutator(s, pi_a(apply_function(s, g))));
}

SymMatrix flow_factorized(const SymMatrix& s0, const SpectralFunction& g, double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "flow time must be finite");
  const SpectralDecomposition sd = spectral_decompose(s0);
  std::vector<double> exps(sd.lambda.size());
  for (std::size_t k = 0; k < exps.size(); ++k) exps[k] = t * g(sd.lambda[k]);
  if (t == 0.0) return s0;

  Matrix conj(s0.size());
  if (!spectral_basis_conjugator(sd, exps, conj)) conj = naive_conjugator(sd, exps);
  return conjugate(s0, conj);
}

Trajectory flow_integrated(const SymMatrix& s0, const FlowSpec& spec) {
  // Evaluating g once up front turns a domain problem into an error before any stepping.
  (void)apply_function(s0, spec.g);
  const std::size_t steps = step_count(spec.t_final, spec.dt);
  const double h = steps ? spec.t_final / static_cast<double>(steps) : 0.0;

  Trajectory traj;
  traj.append(0.0, s0);
  SymMatrix s = s0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const Matrix k1 = toda_field(s, spec.g);
    const Matrix k2 = toda_field(SymMatrix(s.mat() + (0.5 * h) * k1), spec.g);
    const Matrix k3 = toda_field(SymMatrix(s.mat() + (0.5 * h) * k2), spec.g);
    const Matrix k4 = toda_field(SymMatrix(s.mat() + h * k3), spec.g);
    s = SymMatrix(s.mat() + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    traj.append(static_cast<double>(k) * h, s);
  }
  if (steps) traj.times.back() = spec.t_final;
  return traj;
}

Trajectory flow_trajectory(const SymMatrix& s0, const FlowSpec& spec) {
  if (spec.method == FlowMethod::Integrated) return flow_integrated(s0, spec);
  const std::size_t steps = step_count(spec.t_final, spec.dt);
  const double h = steps ? spec.t_final / static_cast<double>(steps) : 0.0;
  Trajectory traj;
  traj.append(0.0, s0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = (k == steps) ? spec.t_final : static_cast<double>(k) * h;
    traj.append(t, flow_factorized(s0, spec.g, t));
  }
  return traj;
}

ParticleTrajectory particle_flow(const TodaState& st0, double t, double dt) {
  const std::size_t steps = step_count(t, dt);
  const double h = steps ? t / static_cast<double>(steps) : 0.0;
  ParticleTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(st0);
  TodaState s = st0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const ParticleField k1 = particle_field(s);
    const ParticleField k2 = particle_field(axpy(s, 0.5 * h, k1));
    const ParticleField k3 = particle_field(axpy(s, 0.5 * h, k2));
    const ParticleField k4 = particle_field(axpy(s, h, k3));
    for (std::size_t i = 0; i < s.size(); ++i) {
      s.x[i] += (h / 6.0) * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
      s.y[i] += (h / 6.0) * (k1.dy[i] + 2.0 * k2.dy[i] + 2.0 * k3.dy[i] + k4.dy[i]);
    }
    traj.times.push_back(k == steps ? t : static_cast<double>(k) * h);
    traj.states.push_back(s);
  }
  return traj;
}

ClusterPartition detect_clusters(const SymMatrix& s, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "cluster tolerance must be positive");
  const std::size_t n = s.size();
  const double band_tol = kTridiagonalTol * s.norm();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 2; c < n; ++c)
      if (std::abs(s(r, c)) > band_tol) throw Error(ErrorKind::NotTridiagonal, "cluster detection needs a tridiagonal matrix");

  ClusterPartition part;
  std::size_t first = 1;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(s(k - 1, k)) < tol) {
      part.broken_bonds.push_back(k);
      part.blocks.push_back({first, k});
      first = k + 1;
    }
  }
  part.blocks.push_back({first, n});
  return part;
}

DiagnosticsReport convergence_diagnostics(const Trajectory& traj) {
  DiagnosticsReport rep;
  if (traj.states.empty()) return rep;
  const double threshold = 1e-6 * traj.states.front().norm();
  const double bond_tol = 1e-8 * traj.states.front().norm();

  double prev = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Matrix& m = traj.states[k].mat();
    SampleDiagnostics d{traj.times[k], m.offdiag_norm(), m.diag(), true};
    if (k > 0) d.offdiag_nonincreasing = d.offdiag <= prev;
    rep.offdiag_monotone = rep.offdiag_monotone && d.offdiag_nonincreasing;
    prev = d.offdiag;
    rep.samples.push_back(std::move(d));
  }

  rep.steps = rep.samples.size();
  while (rep.steps > 0 && rep.samples[rep.steps - 1].offdiag <= threshold) --rep.steps;
  rep.converged = rep.steps < rep.samples.size();
  if (!rep.converged) rep.steps = rep.samples.size();
  rep.final_offdiag = rep.samples.back().offdiag;

  const std::vector<double>& diag = rep.samples.back().diagonal;
  const std::size_t n = diag.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return diag[a] > diag[b]; });
  rep.diagonal_order.assign(n, 0);
  for (std::size_t rank = 0; rank < n; ++rank) rep.diagonal_order[idx[rank]] = static_cast<int>(rank + 1);

  bool desc = true;
  bool asc = true;
  for (std::size_t k = 0; k < n; ++k) {
    desc = desc && rep.diagonal_order[k] == static_cast<int>(k + 1);
    asc = asc && rep.diagonal_order[k] == static_cast<int>(n - k);
  }
  rep.order_label = desc ? "descending" : asc ? "ascending" : "mixed";

  // Bond k is broken when the coupling between {1..k} and {k+1..n} is negligible.
  const Matrix& last = traj.states.back().mat();
  for (std::size_t k = 1; k < n; ++k) {
    double coupling = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = k; j < n; ++j) coupling = std::max(coupling, std::abs(last(i, j)));
    if (coupling < bond_tol) rep.broken_bonds.push_back(k);
  }
  return rep;
}

}  // namespace slicelab
