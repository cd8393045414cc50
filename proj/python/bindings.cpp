#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbc/bounds.hpp"
#include "pbc/classify.hpp"
#include "pbc/dmbc.hpp"
#include "pbc/envelope.hpp"
#include "pbc/model.hpp"
#include "pbc/regions.hpp"
#include "pbc/sweep.hpp"

namespace py = pybind11;
using namespace pbc;

namespace {

PbcParams make_params(double alpha, double s1, double s2, double scale) {
  PbcParams p{alpha, s1, s2, scale, false};
  p.validate();
  return p;
}

py::dict membership_dict(const Membership& m) {
  py::dict d;
  d["degraded"] = m.degraded;
  d["less_noisy"] = m.less_noisy;
  d["more_capable"] = m.more_capable;
  d["effectively_less_noisy"] = m.effectively_less_noisy;
  return d;
}

}  // namespace

PYBIND11_MODULE(poisson_bc, m) {
  m.doc() = "Poisson broadcast channel: rates, envelopes, classification and bounds";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);

  py::enum_<Receiver>(m, "Receiver").value("first", Receiver::first).value("second", Receiver::second);
  py::enum_<Orientation>(m, "Orientation")
      .value("first_minus_second", Orientation::first_minus_second)
      .value("second_minus_first", Orientation::second_minus_first);

  py::class_<PbcParams>(m, "Params")
      .def(py::init(&make_params), py::arg("alpha"), py::arg("s1"), py::arg("s2"), py::arg("scale") = 1.0)
      .def_readonly("alpha", &PbcParams::alpha)
      .def_readonly("s1", &PbcParams::s1)
      .def_readonly("s2", &PbcParams::s2)
      .def_readonly("scale", &PbcParams::scale)
      .def_readonly("swapped", &PbcParams::swapped)
      .def_static("canonical", &PbcParams::canonical, py::arg("alpha"), py::arg("s1"), py::arg("s2"),
                  py::arg("scale") = 1.0)
      .def("__repr__", [](const PbcParams& p) {
        return "Params(alpha=" + std::to_string(p.alpha) + ", s1=" + std::to_string(p.s1) +
               ", s2=" + std::to_string(p.s2) + ", scale=" + std::to_string(p.scale) + ")";
      });

  m.def("mutual_info_rate", &mutual_info_rate, py::arg("which"), py::arg("q"), py::arg("params"));
  m.def("optimal_input", py::overload_cast<double>(&optimal_input), py::arg("s"));
  m.def("capacity", &capacity, py::arg("which"), py::arg("params"));
  m.def("g1", &g1, py::arg("x"), py::arg("s1"), py::arg("s2"));
  m.def("g2", &g2, py::arg("x"), py::arg("s1"), py::arg("s2"));

  m.def(
      "envelope",
      [](Orientation o, const PbcParams& p, double q) { return analytic_envelope(o, p)(q); },
      py::arg("orientation"), py::arg("params"), py::arg("q"));

  m.def("breakpoints", [](double s1, double s2) {
    const Breakpoints b = breakpoints(s1, s2);
    py::dict d;
    d["alpha4"] = b.alpha4;
    d["alpha3"] = b.alpha3;
    d["alpha23"] = b.alpha23;
    d["alpha2"] = b.alpha2;
    d["alpha12"] = b.alpha12;
    d["alpha1"] = b.alpha1;
    return d;
  });

  m.def(
      "classify",
      [](const PbcParams& p, bool resolve) {
        const ChannelClass c = resolve ? classify_resolved(p) : classify(p);
        py::dict d;
        d["verdict"] = to_string(c.verdict);
        d["stronger"] = c.stronger ? py::object(py::int_(index(*c.stronger))) : py::object(py::none());
        d["receiver1"] = membership_dict(c.first);
        d["receiver2"] = membership_dict(c.second);
        d["inconclusive"] = c.inconclusive;
        return d;
      },
      py::arg("params"), py::arg("resolve") = false);

  m.def(
      "region",
      [](const PbcParams& p, std::size_t n_points, bool more_capable) {
        const RegionBoundary b = more_capable ? region_more_capable(p, n_points) : region_less_noisy(p, n_points);
        std::vector<std::tuple<double, double, double>> rows;
        for (std::size_t i = 0; i < b.points.size(); ++i) rows.emplace_back(b.lambdas[i], b.points[i].r1, b.points[i].r2);
        return rows;
      },
      py::arg("params"), py::arg("n_points") = 65, py::arg("more_capable") = false);

  m.def("superposition_sum_rate", &superposition_sum_rate, py::arg("params"));
  m.def(
      "marton_sum_rate",
      [](const PbcParams& p, int starts, std::uint64_t seed) {
        return marton_sum_rate(MutualInfoFunctional::from_params(p), {starts, seed, 1}).value;
      },
      py::arg("params"), py::arg("starts") = 64, py::arg("seed") = 1);
  m.def(
      "uv_sum_rate",
      [](const PbcParams& p, int starts, std::uint64_t seed) {
        return uv_sum_rate(MutualInfoFunctional::from_params(p), {starts, seed, 1}).value;
      },
      py::arg("params"), py::arg("starts") = 64, py::arg("seed") = 1);

  m.def(
      "classify_skewed",
      [](double p1, double p2) { return to_string(classify_dmbc(skewed_channel({p1, p2})).verdict); },
      py::arg("p1"), py::arg("p2"));

  m.def(
      "fraction_closed_form",
      [](double b, double k) {
        const FractionClosedForm f = fraction_closed_form({b, k});
        return std::make_pair(f.less_noisy, f.degraded);
      },
      py::arg("b"), py::arg("k"));
  m.def(
      "fraction_monte_carlo",
      [](double b, double k, std::size_t n, std::uint64_t seed) {
        const FractionEstimate e = fraction_monte_carlo({b, k}, n, seed);
        return std::make_pair(e.less_noisy, e.less_noisy_stderr);
      },
      py::arg("b"), py::arg("k"), py::arg("samples"), py::arg("seed") = 1);
}
