#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slicelab/error.hpp"
#include "slicelab/io.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/matcore.hpp"
#include "slicelab/polytope.hpp"
#include "slicelab/random.hpp"
#include "slicelab/slice.hpp"
#include "slicelab/toda.hpp"

namespace slicelab::cli {

namespace {

using io::json;

struct Options {
  std::string in;
  std::string out;
  std::string out_q;
  std::string out_r;
  std::string traj;
  std::string report;
  std::string projection;
  std::string f = "identity";
  std::string g = "identity";
  std::string method = "factorized";
  std::string kind = "symmetric";
  std::string spectrum;
  long steps = 0;
  double t = 0.0;
  double dt = 1e-3;
  std::size_t n = 3;
  std::uint64_t seed = 0;
};

class Emitter {
 public:
  explicit Emitter(std::ostream& out) : out_(out) {}

  void json_to(const std::string& path, const json& j) const {
    if (path.empty()) {
      out_ << j.dump(2) << '\n';
    } else {
      io::write_json_file(path, j);
    }
  }

  void text_to(const std::string& path, const std::function<void(std::ostream&)>& write) const {
    if (path.empty()) {
      write(out_);
      return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    write(f);
  }

 private:
  std::ostream& out_;
};

SymMatrix read_sym(const std::string& path) { return SymMatrix(io::matrix_from_json(io::read_json_file(path))); }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number '" + item + "' in list '" + text + "'");
    }
  }
  return v;
}

FlowMethod parse_method(const std::string& m) {
  return m == "integrated" ? FlowMethod::Integrated : FlowMethod::Factorized;
}

void cmd_factor(const Options& o, const Emitter& e) {
  const Matrix m = io::matrix_from_json(io::read_json_file(o.in));
  const QrFactors f = qr_factor(m);
  if (o.out_q.empty() && o.out_r.empty()) {
    e.json_to("", json{{"q", io::matrix_to_json(f.q)}, {"r", io::matrix_to_json(f.r)}});
    return;
  }
  if (!o.out_q.empty()) io::write_json_file(o.out_q, io::matrix_to_json(f.q));
  if (!o.out_r.empty()) io::write_json_file(o.out_r, io::matrix_to_json(f.r));
}

void cmd_step(const Options& o, const Emitter& e) {
  const SymMatrix s = read_sym(o.in);
  e.json_to(o.out, io::matrix_to_json(functional_step(s, SpectralFunction::parse(o.f))));
}

void cmd_iterate(const Options& o, const Emitter& e) {
  const Trajectory traj = iterate_qr(read_sym(o.in), o.steps, SpectralFunction::parse(o.f));
  if (!o.traj.empty()) e.text_to(o.traj, [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
  e.json_to(o.report, io::diagnostics_to_json(convergence_diagnostics(traj)));
}

void cmd_flow(const Options& o, const Emitter& e) {
  const SymMatrix s0 = read_sym(o.in);
  const SpectralFunction g = SpectralFunction::parse(o.g);
  if (o.method == "both") {
    const SymMatrix fact = flow_factorized(s0, g, o.t);
    const Trajectory integ = flow_integrated(s0, FlowSpec(g, o.t, o.dt, FlowMethod::Integrated));
    if (!o.traj.empty()) e.text_to(o.traj, [&](std::ostream& os) { io::write_trajectory_csv(os, integ); });
    if (!o.out.empty()) io::write_json_file(o.out, io::matrix_to_json(fact));
    const double dev = max_abs_diff(fact, integ.states.back());
    e.json_to("", json{{"max_deviation", dev}, {"relative_deviation", dev / s0.norm()}, {"t", o.t}, {"dt", o.dt}});
    return;
  }
  if (!o.traj.empty()) {
    const Trajectory traj = flow_trajectory(s0, FlowSpec(g, o.t, o.dt, parse_method(o.method)));
    e.text_to(o.traj, [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
    if (!o.out.empty()) io::write_json_file(o.out, io::matrix_to_json(traj.states.back()));
    return;
  }
  const SymMatrix final_state = o.method == "integrated"
                                    ? flow_integrated(s0, FlowSpec(g, o.t, o.dt, FlowMethod::Integrated)).states.back()
                                    : flow_factorized(s0, g, o.t);
  e.json_to(o.out, io::matrix_to_json(final_state));
}

void cmd_particles(const Options& o, const Emitter& e) {
  const TodaState st = io::toda_state_from_json(io::read_json_file(o.in));
  const ParticleTrajectory traj = particle_flow(st, o.t, o.dt);
  e.text_to(o.out, [&](std::ostream& os) { io::write_particle_csv(os, traj); });
}

void cmd_moser(const Options& o, const Emitter& e) {
  e.json_to(o.out, io::moser_to_json(moser_coordinates(read_sym(o.in))));
}

void cmd_moser_inverse(const Options& o, const Emitter& e) {
  const MoserCoordinates mc = io::moser_from_json(io::read_json_file(o.in));
  e.json_to(o.out, io::matrix_to_json(moser_reconstruct(mc)));
}

void cmd_bfr(const Options& o, const Emitter& e) { e.json_to(o.out, json{{"point", bfr_map(read_sym(o.in))}}); }

void cmd_polytope(const Options& o, const Emitter& e) {
  const VertexSet vs = spectral_polytope(read_sym(o.in));
  if (!o.projection.empty()) e.text_to(o.projection, [&](std::ostream& os) { io::write_projection_csv(os, vs); });
  e.json_to(o.out, io::vertex_set_to_json(vs));
}

void cmd_random(const Options& o, const Emitter& e) {
  Rng rng(o.seed);
  std::vector<double> spectrum = o.spectrum.empty() ? std::vector<double>{} : parse_list(o.spectrum);
  if (!spectrum.empty()) std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  const bool wants_spectrum = o.kind == "conjugate";
  if (wants_spectrum && spectrum.empty()) spectrum = random_spectrum(o.n, -3.0, 3.0, rng);
  if (!spectrum.empty() && spectrum.size() != o.n) {
    throw Error(ErrorKind::DimensionMismatch, "--spectrum has " + std::to_string(spectrum.size()) + " values but --n is " +
                                                  std::to_string(o.n));
  }

  Matrix m(o.n);
  if (o.kind == "symmetric") {
    m = random_symmetric(o.n, rng);
  } else if (o.kind == "spd") {
    m = random_spd(o.n, rng);
  } else if (o.kind == "orthogonal") {
    m = random_orthogonal(o.n, rng);
  } else if (o.kind == "jacobi") {
    m = spectrum.empty() ? random_jacobi(o.n, rng) : random_jacobi_with_spectrum(spectrum, rng);
  } else {
    m = random_conjugate(spectrum, rng);
  }
  json j = io::matrix_to_json(m);
  j["seed"] = o.seed;
  j["kind"] = o.kind;
  e.json_to(o.out, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"QR steps, Toda flows, Moser coordinates and spectral polytopes", "slicelab"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("-i,--in", o.in, what)->required()->check(CLI::ExistingFile);
  };
  auto output = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("-o,--out", o.out, what + " (stdout when omitted)");
  };

  auto* factor = app.add_subcommand("factor", "QR factorization with positive R diagonal");
  input(factor, "matrix JSON");
  factor->add_option("--q", o.out_q, "output path for Q (matrix JSON)");
  factor->add_option("--r", o.out_r, "output path for R (matrix JSON)");

  auto* step = app.add_subcommand("step", "one functional QR step: conjugate by the Q factor of f(S)");
  input(step, "symmetric matrix JSON");
  step->add_option("-f,--f", o.f, "function spec: identity | log | exp | pow:<p>[/<q>] | poly:c0,c1,...")
      ->capture_default_str();
  output(step, "matrix JSON");

  auto* iterate = app.add_subcommand("iterate", "repeat the functional QR step");
  input(iterate, "symmetric matrix JSON");
  iterate->add_option("--steps", o.steps, "number of steps")->required()->check(CLI::NonNegativeNumber);
  iterate->add_option("-f,--f", o.f, "function spec")->capture_default_str();
  iterate->add_option("--traj", o.traj, "trajectory CSV output path");
  iterate->add_option("--report", o.report, "diagnostics JSON output path (stdout when omitted)");

  auto* flow = app.add_subcommand("flow", "Toda-type flow dS/dt = [S, Pi_a g(S)]");
  input(flow, "symmetric matrix JSON");
  flow->add_option("-g,--g", o.g, "function spec for g")->capture_default_str();
  flow->add_option("-t,--t", o.t, "final time (may be negative)")->required();
  flow->add_option("--dt", o.dt, "step for sampling and integration")->capture_default_str()->check(CLI::PositiveNumber);
  flow->add_option("--method", o.method, "factorized | integrated | both")
      ->capture_default_str()
      ->check(CLI::IsMember({"factorized", "integrated", "both"}));
  flow->add_option("--traj", o.traj, "trajectory CSV output path");
  output(flow, "final matrix JSON");

  auto* particles = app.add_subcommand("toda-particles", "integrate the Toda particle system");
  input(particles, "Toda state JSON {\"x\": [...], \"y\": [...]}");
  particles->add_option("-t,--t", o.t, "final time")->required();
  particles->add_option("--dt", o.dt, "RK4 step")->capture_default_str()->check(CLI::PositiveNumber);
  output(particles, "particle CSV");

  auto* moser = app.add_subcommand("moser", "Jacobi matrix to Moser coordinates");
  input(moser, "Jacobi matrix JSON");
  output(moser, "Moser coordinates JSON");

  auto* moser_inv = app.add_subcommand("moser-inverse", "Moser coordinates to Jacobi matrix");
  input(moser_inv, "Moser coordinates JSON");
  output(moser_inv, "matrix JSON");

  auto* bfr = app.add_subcommand("bfr", "BFR map S -> diag(Q Lambda Q^T)");
  input(bfr, "symmetric matrix JSON");
  output(bfr, "point JSON");

  auto* polytope = app.add_subcommand("polytope", "accessible vertices and spectral polytope");
  input(polytope, "symmetric matrix JSON");
  output(polytope, "vertex set JSON");
  polytope->add_option("--projection", o.projection, "projection CSV onto the sum-zero hyperplane");

  auto* random = app.add_subcommand("random", "reproducible random test matrices");
  random->add_option("--kind", o.kind, "symmetric | spd | orthogonal | jacobi | conjugate")
      ->capture_default_str()
      ->check(CLI::IsMember({"symmetric", "spd", "orthogonal", "jacobi", "conjugate"}));
  random->add_option("--n", o.n, "dimension")->capture_default_str()->check(CLI::Range(2, 12));
  random->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  random->add_option("--spectrum", o.spectrum, "comma-separated eigenvalues (jacobi, conjugate)");
  output(random, "matrix JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  const Emitter emit(out);
  const std::vector<std::pair<CLI::App*, void (*)(const Options&, const Emitter&)>> table{
      {factor, cmd_factor},     {step, cmd_step},           {iterate, cmd_iterate}, {flow, cmd_flow},
      {particles, cmd_particles}, {moser, cmd_moser},       {moser_inv, cmd_moser_inverse},
      {bfr, cmd_bfr},           {polytope, cmd_polytope},   {random, cmd_random},
  };
  try {
    for (const auto& [sub, fn] : table) {
      if (sub->parsed()) fn(o, emit);
    }
  } catch (const Error& e) {
    err << json{{"error", to_string(e.kind())}, {"detail", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace slicelab::cli
