#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "telefid/cli.hpp"
#include "telefid/errors.hpp"
#include "telefid/metrics.hpp"
#include "telefid/optimal.hpp"
#include "telefid/properties.hpp"
#include "telefid/sim.hpp"

namespace py = pybind11;
using namespace telefid;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Mat4 to_mat4(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4)
    throw Error(ErrorKind::InvalidArgument, "expected a 4x4 complex array");
  Mat4 m;
  auto v = a.unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) m(i, j) = v(i, j);
  return m;
}

CArray to_array(const Mat4& m) {
  CArray a({4, 4});
  auto v = a.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) v(i, j) = m(i, j);
  return a;
}

DensityMatrix state(const CArray& a) { return validate(to_mat4(a)); }

py::object to_python(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

PropertyKind parse_kind(const std::string& k) {
  if (k == "L") return PropertyKind::LinearEntropy;
  if (k == "B") return PropertyKind::ChshB;
  if (k == "C") return PropertyKind::Concurrence;
  throw Error(ErrorKind::InvalidArgument, "kind must be one of L, B, C");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Teleportation fidelity and fidelity deviation of two-qubit resources";

  static py::exception<Error> error(m, "TelefidError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      inst.attr("value") = e.value();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def("validate", [](const CArray& a) { return to_array(state(a).matrix()); }, py::arg("rho"));
  m.def("werner", [](double p) { return to_array(make_werner(p).matrix()); }, py::arg("p"));
  m.def("pure_schmidt", [](double a) { return to_array(make_pure_schmidt(a).matrix()); }, py::arg("a"));
  m.def("bell", [](int k) { return to_array(make_bell(k).matrix()); }, py::arg("k"));
  m.def(
      "random_state",
      [](std::uint64_t seed, bool pure) {
        return to_array(sample_random_state(seed, pure ? SampleKind::HaarPure : SampleKind::GinibreMixed).matrix());
      },
      py::arg("seed"), py::arg("pure") = false);

  m.def("canonicalize", [](const CArray& a) { return to_python(cli::canonical_to_json(canonicalize(state(a)))); },
        py::arg("rho"));
  m.def("analyze", [](const CArray& a) { return to_python(cli::analysis_report(state(a))); }, py::arg("rho"));
  m.def(
      "assess",
      [](const CArray& a) {
        const TeleportMetrics t = assess(state(a));
        py::dict d;
        d["f_max"] = t.f_max;
        d["delta"] = t.delta;
        d["det_class"] = to_string(t.det_class);
        d["useful"] = t.useful;
        d["universal"] = t.universal;
        return d;
      },
      py::arg("rho"));
  m.def(
      "properties",
      [](const CArray& a) {
        const PropertyReport p = properties(state(a));
        py::dict d;
        d["L"] = p.linear_entropy;
        d["M"] = p.chsh_m;
        d["B"] = p.chsh_b;
        d["C"] = p.concurrence;
        d["N"] = p.negativity;
        return d;
      },
      py::arg("rho"));

  m.def("largest_max_fidelity", [](const std::string& k, double v) { return largest_max_fidelity(parse_kind(k), v); },
        py::arg("kind"), py::arg("value"));
  m.def(
      "construct_optimal",
      [](const std::string& k, double v, std::optional<Vec3> r) {
        const PropertyKind kind = parse_kind(k);
        if (r && kind != PropertyKind::Concurrence)
          throw Error(ErrorKind::InvalidArgument, "a local vector r is only accepted for kind C");
        return to_array(construct_optimal(kind, v, r.value_or(Vec3{})).state.matrix());
      },
      py::arg("kind"), py::arg("value"), py::arg("r") = py::none());
  m.def(
      "check_optimal",
      [](const CArray& a, const std::string& k, double v) {
        const OptimalityVerdict o = check_optimal(state(a), parse_kind(k), v);
        py::dict d;
        d["is_optimal"] = o.is_optimal;
        d["is_largest_max_fidelity"] = o.is_largest_max_fidelity;
        d["is_zero_deviation"] = o.is_zero_deviation;
        d["failed"] = o.witness.failed;
        return d;
      },
      py::arg("rho"), py::arg("kind"), py::arg("value"));

  m.def(
      "fidelity_stats",
      [](const CArray& a) {
        const FidelityStats s = fidelity_stats(state(a));
        return py::make_tuple(s.mean, s.deviation);
      },
      py::arg("rho"), "Design-exact (mean, deviation) of the fixed singlet-matched protocol.");
  m.def(
      "fidelity_stats_mc",
      [](const CArray& a, std::size_t n, std::uint64_t seed) {
        const FidelityStats s = fidelity_stats_mc(state(a), n, seed);
        return py::make_tuple(s.mean, s.deviation, s.std_error);
      },
      py::arg("rho"), py::arg("n_samples"), py::arg("seed") = 1);
}
