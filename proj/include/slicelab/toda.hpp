#pragma once

#include <string>
#include <vector>

#include "slicelab/matcore.hpp"
#include "slicelab/slice.hpp"

namespace slicelab {

/// Positions x and velocities y of the n-particle Toda lattice.
struct TodaState {
  std::vector<double> x;
  std::vector<double> y;

  TodaState(std::vector<double> x, std::vector<double> y);
  std::size_t size() const noexcept { return x.size(); }
  /// Same state translated so that Σx = 0.
  TodaState canonical() const;
};

struct ParticleTrajectory {
  std::vector<double> times;
  std::vector<TodaState> states;
};

enum class FlowMethod { Factorized, Integrated };

struct FlowSpec {
  SpectralFunction g;
  double t_final;
  double dt;
  FlowMethod method = FlowMethod::Factorized;

  FlowSpec(SpectralFunction g, double t_final, double dt, FlowMethod method = FlowMethod::Factorized);
};

/// Contiguous 1-based index intervals [first, last]; a bond k couples
/// particles k and k+1.
struct ClusterPartition {
  struct Block {
    std::size_t first;
    std::size_t last;
    friend bool operator==(const Block&, const Block&) = default;
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> broken_bonds;
};

double hamiltonian(const TodaState& st);

/// J_kk = −y_k/2, J_{k,k+1} = e^{(x_k − x_{k+1})/2}/2.
SymMatrix flaschka(const TodaState& st);

/// Inverse of flaschka in the gauge Σx = 0. Throws NotJacobi.
TodaState inverse_flaschka(const SymMatrix& j);

struct ParticleField {
  std::vector<double> dx;
  std::vector<double> dy;
};

/// Hamilton's equations: dx_k = y_k, dy_k = e^{x_{k−1}−x_k} − e^{x_k−x_{k+1}}.
ParticleField particle_field(const TodaState& st);

/// [s, Π_a g(s)].
SymMatrix toda_field(const SymMatrix& s, const SpectralFunction& g);

/// Solution by factorization: conjugate s0 by the Q factor of e^{t·g(s0)}.
SymMatrix flow_factorized(const SymMatrix& s0, const SpectralFunction& g, double t);

/// RK4 on ds/dt = toda_field(s, g), one sample per step.
Trajectory flow_integrated(const SymMatrix& s0, const FlowSpec& spec);

/// Samples the flow on the flow_integrated grid, using spec.method.
Trajectory flow_trajectory(const SymMatrix& s0, const FlowSpec& spec);

/// RK4 on the particle system; t may be negative.
ParticleTrajectory particle_flow(const TodaState& st0, double t, double dt);

/// Splits wherever |s_{k,k+1}| < tol. Throws NotTridiagonal.
ClusterPartition detect_clusters(const SymMatrix& s, double tol);

struct SampleDiagnostics {
  double time;
  double offdiag;
  std::vector<double> diagonal;
  bool offdiag_nonincreasing;  // relative to the previous sample
};

struct DiagnosticsReport {
  std::vector<SampleDiagnostics> samples;
  bool converged = false;
  /// Index of the first sample from which every later sample is below the
  /// convergence threshold; equals samples.size() when not converged.
  std::size_t steps = 0;
  double final_offdiag = 0.0;
  bool offdiag_monotone = true;
  /// diagonal_order[k] = descending rank (1-based) of the final diagonal
  /// entry k; identity means descending order.
  std::vector<int> diagonal_order;
  std::string order_label;  // "descending", "ascending" or "mixed"
  std::vector<std::size_t> broken_bonds;
};

/// Convergence to diagonal form: off-diagonal Frobenius norm below
/// 1e-6·‖s(0)‖.
DiagnosticsReport convergence_diagnostics(const Trajectory& traj);

}  // namespace slicelab
