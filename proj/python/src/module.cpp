#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "affgrav/cli.hpp"
#include "affgrav/expansion.hpp"
#include "affgrav/fixtures.hpp"
#include "affgrav/numcurve.hpp"
#include "affgrav/verify.hpp"

namespace py = pybind11;
using namespace affgrav;

namespace {

py::list coeff_strings(const Series& s) {
  py::list out;
  for (const auto& c : s.coeffs()) out.append(c.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_affgrav, m) {
  m.doc() = "Affine Taylor expansions of plane curves and their gravity curves";

  py::class_<QR2Scalar>(m, "QR2Scalar")
      .def(py::init<std::int64_t>(), py::arg("n") = 0)
      .def_static("sqrt2", &QR2Scalar::sqrt2)
      .def_static("fraction", &QR2Scalar::fraction)
      .def("inverse", &QR2Scalar::inverse)
      .def("__float__", &QR2Scalar::to_double)
      .def("__str__", &QR2Scalar::to_string)
      .def("__repr__", [](const QR2Scalar& x) { return "QR2Scalar(" + x.to_string() + ")"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self);

  py::class_<DiffPoly>(m, "DiffPoly")
      .def_static("kappa", &DiffPoly::kappa, py::arg("order"), py::arg("power") = 1)
      .def("differentiate", &DiffPoly::differentiate)
      .def("kill_odd_derivatives", &DiffPoly::kill_odd_derivatives)
      .def("substitute", &DiffPoly::substitute)
      .def("max_order", &DiffPoly::max_order)
      .def("is_zero", &DiffPoly::is_zero)
      .def("__str__", &DiffPoly::to_string)
      .def(py::self + py::self)
      .def(py::self * py::self)
      .def(py::self == py::self);

  py::class_<Series>(m, "Series")
      .def_property_readonly("order", &Series::order)
      .def("__getitem__", [](const Series& s, int k) { return s[k]; })
      .def("__len__", [](const Series& s) { return s.order() + 1; })
      .def("coeffs", &coeff_strings)
      .def("evaluate", &Series::evaluate);

  py::class_<Pipeline>(m, "Pipeline")
      .def_readonly("order", &Pipeline::order)
      .def_readonly("f", &Pipeline::f)
      .def_readonly("g", &Pipeline::g)
      .def_readonly("u", &Pipeline::u)
      .def_readonly("v", &Pipeline::v)
      .def_readonly("h", &Pipeline::h)
      .def_readonly("gravity_x", &Pipeline::gravity_x);

  m.def("build_pipeline", [](int order) { return build_pipeline(order); }, py::arg("order") = 10);
  m.def("h_leading_closed_form", &h_leading_closed_form);

  m.def(
      "verify",
      [](int order, std::uint64_t seed, bool self_test) {
        VerifyOptions o;
        o.order = order;
        o.seed = seed;
        o.frame.inject_sign_flip = self_test;
        const VerifyReport r = run_verification(o);
        py::dict suites;
        for (const auto& s : r.suites) suites[py::str(s.name)] = s.log.ok();
        py::dict out;
        out["ok"] = r.ok();
        out["suites"] = suites;
        const CheckFailure* f = r.first_failure();
        out["first_failure"] = f ? py::object(py::str(f->invariant)) : py::object(py::none());
        return out;
      },
      py::arg("order") = 10, py::arg("seed") = kDefaultSeed, py::arg("self_test") = false);

  py::class_<GravitySample>(m, "GravitySample")
      .def_readonly("delta", &GravitySample::delta)
      .def_readonly("s_minus", &GravitySample::s_minus)
      .def_readonly("s_plus", &GravitySample::s_plus)
      .def_readonly("midpoint_x", &GravitySample::midpoint_x);

  py::class_<NumCurve>(m, "NumCurve")
      .def_property_readonly("step", &NumCurve::step)
      .def("__len__", &NumCurve::size)
      .def("grid", &NumCurve::grid)
      .def("max_wronskian_drift", py::overload_cast<>(&NumCurve::max_wronskian_drift, py::const_))
      .def("renormalized", &NumCurve::renormalized)
      .def("affine_curvature", [](const NumCurve& c, double s) { return affine_curvature(c, s); });

  m.def(
      "fixture_curve",
      [](const std::string& name, double step) { return realize(parse_fixture(name).spec, step); },
      py::arg("fixture"), py::arg("step") = 1e-3);

  m.def(
      "gravity_samples",
      [](const NumCurve& c, const std::vector<double>& deltas) { return gravity_samples(c, deltas); },
      py::arg("curve"), py::arg("deltas"));
  m.def(
      "default_deltas", [] { return DeltaSchedule{}.deltas(); });

  m.def(
      "fit_flatness",
      [](const std::vector<GravitySample>& s, double kappa_prime, double tol) {
        const FlatnessResult r = fit_flatness(s, kappa_prime, tol);
        py::dict d;
        d["a"] = r.a;
        d["b"] = r.b;
        d["c"] = r.c;
        d["predicted_b"] = r.predicted_b;
        d["is_flat"] = r.is_flat;
        d["matches_prediction"] = r.matches_prediction;
        return d;
      },
      py::arg("samples"), py::arg("kappa_prime"), py::arg("tol_flat") = kDefaultTolFlat);

  m.def(
      "straightness",
      [](const std::vector<GravitySample>& s, double tol) {
        const StraightnessResult r = straightness_test(s, tol);
        return py::make_tuple(r.max_dev, r.is_straight);
      },
      py::arg("samples"), py::arg("tol_straight") = 0.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
