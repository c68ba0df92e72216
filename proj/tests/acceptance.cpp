// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slicelab/error.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/matcore.hpp"
#include "slicelab/polytope.hpp"
#include "slicelab/random.hpp"
#include "slicelab/slice.hpp"
#include "slicelab/toda.hpp"

using namespace slicelab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double vec_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double band_leak(const Matrix& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i > j + 1 || j > i + 1) d = std::max(d, std::abs(m(i, j)));
  return d;
}

SymMatrix iterate(SymMatrix s, int k) {
  for (int i = 0; i < k; ++i) s = qr_step(s);
  return s;
}

Outcome two_formula_qr_step() {
  Rng rng(1001);
  double worst = 0.0;
  int done = 0;
  while (done < 200) {
    const SymMatrix s = random_symmetric(2 + done % 5, rng);
    QrFactors f{OrthMatrix(Matrix::identity(2)), UpperTriMatrix(Matrix::identity(2))};
    try {
      f = qr_factor(s);
    } catch (const Error&) {
      continue;  // singular draw, resample
    }
    const Matrix rq = f.r.mat() * f.q.mat();
    const Matrix a = f.q.mat().transposed() * s.mat() * f.q.mat();
    const Matrix b = f.r.mat() * s.mat() * f.r.inverse();
    worst = std::max({worst, max_abs_diff(rq, a) / s.norm(), max_abs_diff(rq, b) / s.norm()});
    ++done;
  }
  return {worst < 1e-10, fmt("max relative error %.3g over 200 matrices (tol 1e-10)", worst)};
}

Outcome k_step_identity() {
  Rng rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix s = random_spd(2 + trial % 5, rng);
    for (int k = 1; k <= 5; ++k) {
      const SymMatrix a = iterate(s, k);
      const SymMatrix b = functional_step(s, SpectralFunction::power(k));
      worst = std::max(worst, max_abs_diff(a, b) / s.norm());
    }
  }
  return {worst < 1e-8, fmt("max relative error %.3g (tol 1e-8)", worst)};
}

Outcome flow_interpolation() {
  Rng rng(1003);
  double interp = 0.0;
  double integ = 0.0;
  double order = 1e300;
  for (int trial = 0; trial < 5; ++trial) {
    const SymMatrix s = random_spd(3 + trial % 3, rng);
    for (int k = 1; k <= 3; ++k) {
      const SymMatrix a = flow_factorized(s, SpectralFunction::log(), k);
      interp = std::max(interp, max_abs_diff(a, iterate(s, k)) / s.norm());
    }
    for (double t : {1.0, 2.0}) {
      const Trajectory tr = flow_integrated(s, FlowSpec(SpectralFunction::log(), t, 1e-3, FlowMethod::Integrated));
      const SymMatrix exact = flow_factorized(s, SpectralFunction::log(), t);
      integ = std::max(integ, max_abs_diff(tr.states.back(), exact) / s.norm());
    }
    const SymMatrix exact = flow_factorized(s, SpectralFunction::log(), 1.0);
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const double dt = i == 0 ? 0.05 : 0.025;
      const Trajectory tr = flow_integrated(s, FlowSpec(SpectralFunction::log(), 1.0, dt, FlowMethod::Integrated));
      err[i] = max_abs_diff(tr.states.back(), exact);
    }
    order = std::min(order, std::log2(err[0] / err[1]));
  }
  const bool ok = interp < 1e-8 && integ < 1e-6 && order >= 3.7;
  return {ok, fmt("interpolation %.3g (tol 1e-8), RK4 deviation %.3g (tol 1e-6), ", interp, integ) +
                  fmt("observed order %.3f (min 3.7)", order)};
}

Outcome interpolating_field_limit() {
  Rng rng(1004);
  bool ok = true;
  double last_worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const SymMatrix s = random_spd(3 + trial % 3, rng);
    const Matrix x = interpolating_field(s);
    double prev = 1e300;
    for (long k : {10L, 100L, 1000L, 10000L}) {
      const Matrix approx = (fractional_step(s, k).mat() - s.mat()) * static_cast<double>(k);
      const double err = max_abs_diff(approx, x) / s.norm();
      if (!(err < prev)) ok = false;
      prev = err;
    }
    if (!(prev < 1e-3)) ok = false;
    last_worst = std::max(last_worst, prev);
  }
  return {ok, fmt("relative error at k=1e4 at most %.3g (tol 1e-3), decreasing in k", last_worst)};
}

Outcome isospectral_bandwidth() {
  Rng rng(1005);
  double drift = 0.0;
  double leak = 0.0;
  const auto track = [&](const SymMatrix& s0, const std::vector<SymMatrix>& path, bool tridiagonal) {
    const std::vector<double> ref = eigenvalues(s0);
    for (const SymMatrix& s : path) {
      drift = std::max(drift, vec_diff(eigenvalues(s), ref) / s0.norm());
      if (tridiagonal) leak = std::max(leak, band_leak(s) / s0.norm());
    }
  };
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const bool tri = trial % 2 == 0;
    const SymMatrix s = tri ? SymMatrix(random_jacobi_with_spectrum(random_spectrum(n, 0.5, 4.0, rng), rng))
                            : random_spd(n, rng);
    track(s, iterate_qr(s, 30, SpectralFunction::identity()).states, tri);
    track(s, iterate_qr(s, 10, SpectralFunction::power(3, 2)).states, tri);
    for (const auto& g : {SpectralFunction::identity(), SpectralFunction::log()}) {
      track(s, flow_trajectory(s, FlowSpec(g, 3.0, 0.1, FlowMethod::Factorized)).states, tri);
      track(s, flow_trajectory(s, FlowSpec(g, 2.0, 1e-3, FlowMethod::Integrated)).states, tri);
    }
  }
  return {drift < 1e-9 && leak < 1e-11,
          fmt("spectral drift %.3g (tol 1e-9), band leak %.3g (tol 1e-11)", drift, leak)};
}

Outcome moser_asymptotics() {
  Rng rng(1006);
  const std::vector<double> lambda{4, 2, 1};
  double off = 0.0;
  double diag = 0.0;
  bool ascending = true;
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix j = random_jacobi_with_spectrum(lambda, rng);
    const SymMatrix fwd = flow_factorized(j, SpectralFunction::identity(), 30.0);
    off = std::max(off, fwd.mat().offdiag_norm());
    diag = std::max(diag, vec_diff(fwd.mat().diag(), lambda));
    const SymMatrix back = flow_factorized(j, SpectralFunction::identity(), -30.0);
    off = std::max(off, back.mat().offdiag_norm());
    const std::vector<double> d = back.mat().diag();
    ascending = ascending && vec_diff(d, {1, 2, 4}) < 1e-6;
  }
  return {off < 1e-6 && diag < 1e-6 && ascending,
          fmt("off-diagonal %.3g, diagonal error %.3g (tol 1e-6); ", off, diag) +
              (ascending ? "reversed flow ascending" : "reversed flow NOT ascending")};
}

Outcome particle_matrix_equivalence() {
  Rng rng(1007);
  double gap = 0.0;
  double energy = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 3 + trial % 3;
    std::vector<double> x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = rng.normal();
      y[k] = rng.normal();
    }
    const TodaState st0(x, y);
    const ParticleTrajectory pt = particle_flow(st0, 2.0, 1e-3);
    const SymMatrix j0 = flaschka(st0);
    const double h0 = hamiltonian(st0);
    for (std::size_t i = 0; i < pt.times.size(); i += 50) {
      const SymMatrix jt = flow_factorized(j0, SpectralFunction::identity(), pt.times[i]);
      gap = std::max(gap, max_abs_diff(flaschka(pt.states[i]), jt));
    }
    for (const TodaState& st : pt.states) energy = std::max(energy, std::abs(hamiltonian(st) - h0));
  }
  return {gap < 1e-5 && energy < 1e-8, fmt("intertwining gap %.3g (tol 1e-5), energy drift %.3g (tol 1e-8)", gap, energy)};
}

Outcome moser_round_trip() {
  Rng rng(1008);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix j = random_jacobi(2 + trial % 5, rng);
    worst = std::max(worst, max_abs_diff(moser_reconstruct(moser_coordinates(j)), j));
  }
  return {worst < 1e-8, fmt("max entry error %.3g over 100 matrices (tol 1e-8)", worst)};
}

Outcome bfr_sign_invariance() {
  Rng rng(1009);
  long mismatches = 0;
  long checks = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const SymMatrix s = random_symmetric(n, rng);
    const SpectralDecomposition sd = spectral_decompose(s);
    const std::vector<double> ref = bfr_diagonal(sd.lambda, sd.q);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Matrix dq = sd.q;
      for (std::size_t r = 0; r < n; ++r)
        if (mask & (1u << r))
          for (std::size_t c = 0; c < n; ++c) dq(r, c) = -dq(r, c);
      ++checks;
      if (bfr_diagonal(sd.lambda, dq) != ref) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " inexact of " + std::to_string(checks) + " sign patterns"};
}

Outcome golden_geometry() {
  const Matrix frame = Matrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const Matrix q = oracle::gram_schmidt_qr(frame).first.transposed();
  const SymMatrix s = conjugate(SymMatrix::diagonal(std::vector<double>{4, 2, 1}), q);
  const VertexSet vs = spectral_polytope(s);
  std::set<std::vector<double>> got;
  for (auto p : vs.points) {
    for (double& v : p) v = std::round(v * 1e9) / 1e9;
    got.insert(p);
  }
  const std::set<std::vector<double>> want{{2, 1, 4}, {2, 4, 1}, {1, 2, 4}, {1, 4, 2}};
  const bool ok = got == want && vs.points.size() == 4 && vs.affine_dim == 2;
  return {ok, std::to_string(vs.points.size()) + " vertices, affine dimension " + std::to_string(vs.affine_dim) +
                  (got == want ? ", vertex set matches" : ", vertex set differs")};
}

Outcome permutohedron_membership() {
  const std::size_t c3 = permutohedron_vertices({4, 2, 1}).points.size();
  const std::size_t c4 = permutohedron_vertices({4, 3, 2, 1}).points.size();
  Rng rng(1011);
  int agree = 0;
  int inside = 0;
  const int total = 600;
  for (int i = 0; i < total; ++i) {
    const std::size_t n = 2 + i % 4;
    const std::vector<double> lambda = random_spectrum(n, -2.0, 3.0, rng);
    const VertexSet vs = permutohedron_vertices(lambda);
    std::vector<double> p(n, 0.0);
    double wsum = 0.0;
    for (const auto& v : vs.points) {
      const double w = -std::log(rng.uniform(1e-12, 1.0));
      wsum += w;
      for (std::size_t k = 0; k < n; ++k) p[k] += w * v[k];
    }
    const double mean = (std::accumulate(lambda.begin(), lambda.end(), 0.0)) / static_cast<double>(n);
    const double alpha = rng.uniform(0.5, 3.0);
    for (double& v : p) v = mean + alpha * (v / wsum - mean);
    const bool h = hull_member(p, vs);
    const bool m = majorization_member(p, lambda);
    if (h == m) ++agree;
    if (m) ++inside;
  }
  int diag_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 5;
    const std::vector<double> lambda = random_spectrum(n, -3.0, 3.0, rng);
    if (majorization_member(random_conjugate(lambda, rng).mat().diag(), lambda)) ++diag_ok;
  }
  const bool ok = c3 == 6 && c4 == 24 && agree == total && diag_ok == 100;
  return {ok, std::to_string(c3) + "/" + std::to_string(c4) + " vertices, hull and majorization agree on " +
                  std::to_string(agree) + "/" + std::to_string(total) + " points (" + std::to_string(inside) +
                  " inside), " + std::to_string(diag_ok) + "/100 conjugate diagonals majorized"};
}

Outcome bfr_containment() {
  Rng rng(1012);
  SymMatrix s = random_conjugate({3.0, 1.5, 0.5, -1.0}, rng);
  while (!is_irreducible(s)) s = random_conjugate({3.0, 1.5, 0.5, -1.0}, rng);
  const VertexSet vs = spectral_polytope(s);
  std::vector<std::vector<double>> images;
  int contained = 0;
  for (int i = 0; i < 100; ++i) {
    images.push_back(bfr_map(slice_point(s, SliceWeights(random_positive(4, rng)))));
    if (hull_member(images.back(), vs)) ++contained;
  }
  double min_sep = 1e300;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) min_sep = std::min(min_sep, vec_diff(images[i], images[j]));
  const bool ok = contained == 100 && min_sep > 1e-8;
  return {ok, std::to_string(contained) + "/100 images in a polytope with " + std::to_string(vs.points.size()) +
                  " vertices, min pairwise separation " + fmt("%.3g", min_sep)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"two-formula QR step", two_formula_qr_step},
      {"k-step identity", k_step_identity},
      {"flow interpolation and RK4 order", flow_interpolation},
      {"interpolating field limit", interpolating_field_limit},
      {"isospectrality and bandwidth", isospectral_bandwidth},
      {"sorting asymptotics", moser_asymptotics},
      {"particle/matrix equivalence", particle_matrix_equivalence},
      {"Moser round trip", moser_round_trip},
      {"BFR sign invariance", bfr_sign_invariance},
      {"zero-corner quadrilateral", golden_geometry},
      {"permutohedron counts and membership", permutohedron_membership},
      {"BFR containment", bfr_containment},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
