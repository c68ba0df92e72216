#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slicelab/error.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/matcore.hpp"
#include "slicelab/polytope.hpp"
#include "slicelab/slice.hpp"
#include "slicelab/toda.hpp"

namespace py = pybind11;
using namespace slicelab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw Error(ErrorKind::DimensionMismatch, "expected a square 2-d array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return Matrix(n, std::vector<double>(a.data(), a.data() + n * n));
}

SymMatrix to_sym(const Array& a) { return SymMatrix(to_matrix(a)); }

Array to_array(const Matrix& m) {
  const auto n = static_cast<py::ssize_t>(m.size());
  Array out({n, n});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

SpectralFunction to_function(const std::string& spec) { return SpectralFunction::parse(spec); }

py::list stack(const std::vector<SymMatrix>& states) {
  py::list out;
  for (const SymMatrix& s : states) out.append(to_array(s));
  return out;
}

py::dict vertex_dict(const VertexSet& vs) {
  py::list labels;
  for (const Permutation& p : vs.labels) labels.append(py::tuple(py::cast(p.images())));
  py::list near;
  for (const Permutation& p : vs.near_threshold) near.append(py::tuple(py::cast(p.images())));
  py::dict d;
  d["lambda"] = to_array(vs.lambda);
  d["points"] = py::cast(vs.points);
  d["labels"] = labels;
  d["affine_dim"] = vs.affine_dim;
  d["near_threshold"] = near;
  return d;
}

}  // namespace

PYBIND11_MODULE(_slicelab, m) {
  m.doc() = "QR slices, Toda flows and spectral polytopes for small symmetric matrices";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      []() { return py::reinterpret_steal<py::object>(PyErr_NewException("slicelab.SlicelabError", PyExc_RuntimeError, nullptr)); });
  m.attr("SlicelabError") = error_type.get_stored();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  m.def("qr_factor", [](const Array& a) {
    const QrFactors f = qr_factor(to_matrix(a));
    return py::make_tuple(to_array(f.q), to_array(f.r));
  });
  m.def("spectral_decompose", [](const Array& a) {
    const SpectralDecomposition sd = spectral_decompose(to_sym(a));
    return py::make_tuple(to_array(sd.lambda), to_array(sd.q));
  }, "Descending eigenvalues and q with s = q.T @ diag(lambda) @ q.");
  m.def("eigenvalues", [](const Array& a) { return to_array(eigenvalues(to_sym(a))); });
  m.def("apply_function", [](const Array& a, const std::string& f) {
    return to_array(apply_function(to_sym(a), to_function(f)));
  }, py::arg("s"), py::arg("f"));
  m.def("pi_a", [](const Array& a) { return to_array(pi_a(to_matrix(a))); });
  m.def("pi_u", [](const Array& a) { return to_array(pi_u(to_matrix(a))); });

  m.def("qr_step", [](const Array& a) { return to_array(qr_step(to_sym(a))); });
  m.def("functional_step", [](const Array& a, const std::string& f) {
    return to_array(functional_step(to_sym(a), to_function(f)));
  }, py::arg("s"), py::arg("f"));
  m.def("fractional_step", [](const Array& a, long k) { return to_array(fractional_step(to_sym(a), k)); },
        py::arg("s"), py::arg("k"));
  m.def("interpolating_field", [](const Array& a) { return to_array(interpolating_field(to_sym(a))); });
  m.def("iterate_qr", [](const Array& a, long steps, const std::string& f) {
    return stack(iterate_qr(to_sym(a), steps, to_function(f)).states);
  }, py::arg("s"), py::arg("steps"), py::arg("f") = "identity");
  m.def("slice_point", [](const Array& a, const std::vector<double>& w) {
    return to_array(slice_point(to_sym(a), SliceWeights(w)));
  }, py::arg("s"), py::arg("w"));
  m.def("is_irreducible", [](const Array& a) { return is_irreducible(to_sym(a)); });

  m.def("flow", [](const Array& a, const std::string& g, double t, const std::string& method, double dt) {
    const SymMatrix s = to_sym(a);
    if (method == "factorized") return to_array(flow_factorized(s, to_function(g), t));
    if (method == "integrated")
      return to_array(flow_integrated(s, FlowSpec(to_function(g), t, dt, FlowMethod::Integrated)).states.back());
    throw Error(ErrorKind::InvalidArgument, "method must be 'factorized' or 'integrated'");
  }, py::arg("s"), py::arg("g"), py::arg("t"), py::arg("method") = "factorized", py::arg("dt") = 1e-3);
  m.def("convergence_diagnostics", [](const Array& a, long steps, const std::string& f) {
    const DiagnosticsReport r = convergence_diagnostics(iterate_qr(to_sym(a), steps, to_function(f)));
    py::dict d;
    d["converged"] = r.converged;
    d["steps"] = r.steps;
    d["final_offdiag"] = r.final_offdiag;
    d["diagonal_order"] = r.diagonal_order;
    d["order"] = r.order_label;
    d["broken_bonds"] = r.broken_bonds;
    return d;
  }, py::arg("s"), py::arg("steps"), py::arg("f") = "identity");

  m.def("flaschka", [](const std::vector<double>& x, const std::vector<double>& y) {
    return to_array(flaschka(TodaState(x, y)));
  }, py::arg("x"), py::arg("y"));
  m.def("inverse_flaschka", [](const Array& a) {
    const TodaState st = inverse_flaschka(to_sym(a));
    return py::make_tuple(to_array(st.x), to_array(st.y));
  });
  m.def("hamiltonian", [](const std::vector<double>& x, const std::vector<double>& y) {
    return hamiltonian(TodaState(x, y));
  }, py::arg("x"), py::arg("y"));
  m.def("particle_flow", [](const std::vector<double>& x, const std::vector<double>& y, double t, double dt) {
    const ParticleTrajectory pt = particle_flow(TodaState(x, y), t, dt);
    const TodaState& last = pt.states.back();
    return py::make_tuple(to_array(last.x), to_array(last.y));
  }, py::arg("x"), py::arg("y"), py::arg("t"), py::arg("dt") = 1e-3);

  m.def("is_jacobi", [](const Array& a) { return is_jacobi(to_sym(a)); });
  m.def("moser_coordinates", [](const Array& a) {
    const MoserCoordinates mc = moser_coordinates(to_sym(a));
    return py::make_tuple(to_array(mc.lambda), to_array(mc.w));
  });
  m.def("moser_reconstruct", [](const std::vector<double>& lambda, const std::vector<double>& w) {
    return to_array(moser_reconstruct(MoserCoordinates{lambda, w}));
  }, py::arg("lam"), py::arg("w"));

  m.def("bfr_map", [](const Array& a) { return to_array(bfr_map(to_sym(a))); });
  m.def("permutohedron_vertices", [](const std::vector<double>& lambda) {
    return vertex_dict(permutohedron_vertices(lambda));
  });
  m.def("accessible_vertices", [](const Array& a) { return vertex_dict(accessible_vertices(to_sym(a))); });
  m.def("spectral_polytope", [](const Array& a) { return vertex_dict(spectral_polytope(to_sym(a))); });
  m.def("majorization_member", &majorization_member, py::arg("p"), py::arg("lam"));
  m.def("polytope_member", [](const std::vector<double>& p, const Array& a) {
    return hull_member(p, spectral_polytope(to_sym(a)));
  }, py::arg("p"), py::arg("s"), "Whether p lies in the spectral polytope of s.");
}
