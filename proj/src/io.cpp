#include "slicelab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "slicelab/error.hpp"

namespace slicelab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::vector<double> real_array(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  const json& arr = j.at(key);
  if (!arr.is_array()) bad(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number()) bad(std::string("field '") + key + "' holds a non-number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad(std::string("field '") + key + "' holds a non-finite value");
    out.push_back(x);
  }
  return out;
}

json permutation_to_json(const Permutation& p) { return json(p.images()); }

Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) bad("permutation must be an array");
  std::vector<int> img;
  for (const json& v : j) {
    if (!v.is_number_integer()) bad("permutation entries must be integers");
    img.push_back(v.get<int>());
  }
  return Permutation(std::move(img));
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  return json{{"n", m.size()}, {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) bad("matrix JSON needs an integer 'n'");
  const auto n = j.at("n").get<long long>();
  if (n < static_cast<long long>(kMinDim) || n > static_cast<long long>(kMaxDim)) {
    bad("matrix dimension " + std::to_string(n) + " outside [2, 12]");
  }
  std::vector<double> data = real_array(j, "data");
  const auto un = static_cast<std::size_t>(n);
  if (data.size() != un * un) bad("matrix 'data' must hold n*n = " + std::to_string(un * un) + " entries");
  return Matrix(un, std::move(data));
}

json moser_to_json(const MoserCoordinates& mc) { return json{{"lambda", mc.lambda}, {"w", mc.w}}; }

MoserCoordinates moser_from_json(const json& j) {
  MoserCoordinates mc{real_array(j, "lambda"), real_array(j, "w")};
  mc.validate();
  return mc;
}

json toda_state_to_json(const TodaState& st) { return json{{"x", st.x}, {"y", st.y}}; }

TodaState toda_state_from_json(const json& j) { return TodaState(real_array(j, "x"), real_array(j, "y")); }

json vertex_set_to_json(const VertexSet& vs) {
  json verts = json::array();
  for (std::size_t k = 0; k < vs.points.size(); ++k) {
    verts.push_back(json{{"pi", permutation_to_json(vs.labels[k])}, {"point", vs.points[k]}});
  }
  json near = json::array();
  for (const auto& p : vs.near_threshold) near.push_back(permutation_to_json(p));
  return json{{"lambda", vs.lambda}, {"vertices", verts}, {"affine_dim", vs.affine_dim}, {"near_threshold", near}};
}

VertexSet vertex_set_from_json(const json& j) {
  VertexSet vs;
  vs.lambda = real_array(j, "lambda");
  if (!j.contains("vertices") || !j.at("vertices").is_array()) bad("vertex set needs a 'vertices' array");
  for (const json& v : j.at("vertices")) {
    if (!v.is_object() || !v.contains("pi")) bad("vertex needs 'pi' and 'point'");
    vs.labels.push_back(permutation_from_json(v.at("pi")));
    vs.points.push_back(real_array(v, "point"));
    if (vs.points.back().size() != vs.lambda.size() || vs.labels.back().size() != vs.lambda.size()) {
      bad("vertex dimension differs from lambda");
    }
  }
  if (!j.contains("affine_dim") || !j.at("affine_dim").is_number_integer()) bad("vertex set needs 'affine_dim'");
  vs.affine_dim = j.at("affine_dim").get<int>();
  if (j.contains("near_threshold")) {
    for (const json& p : j.at("near_threshold")) vs.near_threshold.push_back(permutation_from_json(p));
  }
  return vs;
}

json diagnostics_to_json(const DiagnosticsReport& rep) {
  return json{{"converged", rep.converged},         {"steps", rep.steps},
              {"final_offdiag", rep.final_offdiag}, {"diagonal_order", rep.diagonal_order},
              {"order", rep.order_label},           {"broken_bonds", rep.broken_bonds}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const std::size_t n = traj.states.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) os << ",a" << i << j;
  os << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_real(traj.times[k]);
    for (double v : traj.states[k].mat().data()) os << ',' << format_real(v);
    os << '\n';
  }
}

void write_particle_csv(std::ostream& os, const ParticleTrajectory& traj) {
  if (traj.states.empty()) return;
  const std::size_t n = traj.states.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",y" << i;
  os << ",H\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const TodaState& st = traj.states[k];
    os << format_real(traj.times[k]);
    for (double v : st.x) os << ',' << format_real(v);
    for (double v : st.y) os << ',' << format_real(v);
    os << ',' << format_real(hamiltonian(st)) << '\n';
  }
}

void write_projection_csv(std::ostream& os, const VertexSet& vs) {
  const std::size_t n = vs.lambda.size();
  const auto basis = sum_zero_basis(n);
  os << "pi";
  for (std::size_t c = 1; c < n; ++c) os << ",c" << c;
  os << '\n';
  for (std::size_t k = 0; k < vs.points.size(); ++k) {
    const auto& img = vs.labels[k].images();
    for (std::size_t i = 0; i < img.size(); ++i) os << (i ? " " : "") << img[i];
    for (const auto& b : basis) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += b[i] * vs.points[k][i];
      os << ',' << format_real(c);
    }
    os << '\n';
  }
}

}  // namespace slicelab::io
