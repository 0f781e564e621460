#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toalab/error.hpp"
#include "toalab/scenario.hpp"
#include "toalab/stats.hpp"
#include "toalab/toa.hpp"

#ifndef TOALAB_VERSION
#define TOALAB_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace toalab;

namespace {

ToaOptions make_options(const std::string& normalization, std::optional<double> T) {
  ToaOptions opts;
  opts.policy = parse_normalization_policy(normalization);
  opts.T = T;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_toalab, m) {
  m.doc() = "Quantum time-of-arrival distributions for Gaussian wave packets";
  m.attr("__version__") = TOALAB_VERSION;

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<UnitMismatch>(m, "UnitMismatch", invalid.ptr());
  auto inapplicable = py::register_exception<MethodInapplicable>(m, "MethodInapplicable", error.ptr());
  py::register_exception<FluxInapplicable>(m, "FluxInapplicable", inapplicable.ptr());
  py::register_exception<VanishingNormalization>(m, "VanishingNormalization", inapplicable.ptr());
  py::register_exception<TrajectoryInterpretationRequired>(m, "TrajectoryInterpretationRequired",
                                                           inapplicable.ptr());
  py::register_exception<Indistinguishable>(m, "Indistinguishable", inapplicable.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());

  py::class_<UnitSystem>(m, "UnitSystem")
      .def_static("natural", &UnitSystem::natural)
      .def_static("si", &UnitSystem::si, py::arg("mass") = constants::kRb87Mass,
                  py::arg("omega") = std::nullopt)
      .def_property_readonly("hbar", &UnitSystem::hbar)
      .def_property_readonly("mass", &UnitSystem::mass)
      .def("describe", &UnitSystem::describe)
      .def("__repr__", &UnitSystem::describe);

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &Interval::lo)
      .def_readwrite("hi", &Interval::hi);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("start"), py::arg("end"),
           py::arg("points"))
      .def_property_readonly("start", &TimeGrid::start)
      .def_property_readonly("end", &TimeGrid::end)
      .def_property_readonly("step", &TimeGrid::step)
      .def("__len__", &TimeGrid::size)
      .def("points", &TimeGrid::points);

  py::class_<GaussianPacket>(m, "GaussianPacket")
      .def(py::init([](double x0, double p0, double sigma0, Complex weight) {
             GaussianPacket p{x0, p0, sigma0, weight};
             validate(p);
             return p;
           }),
           py::arg("x0"), py::arg("p0"), py::arg("sigma0") = 1.0,
           py::arg("weight") = Complex{1.0, 0.0})
      .def_readonly("x0", &GaussianPacket::x0)
      .def_readonly("p0", &GaussianPacket::p0)
      .def_readonly("sigma0", &GaussianPacket::sigma0)
      .def_readonly("weight", &GaussianPacket::weight);

  py::class_<Superposition>(m, "Superposition")
      .def(py::init<std::vector<GaussianPacket>, UnitSystem>(), py::arg("packets"),
           py::arg("units") = UnitSystem::natural())
      .def_static("wave_train", &Superposition::wave_train, py::arg("packets"),
                  py::arg("units") = UnitSystem::natural())
      .def_property_readonly("packets", &Superposition::packets)
      .def("amplitude", &Superposition::amplitude, py::arg("x"), py::arg("t"))
      .def("momentum_amplitude", &Superposition::momentum_amplitude, py::arg("k"), py::arg("t"));

  py::class_<RingState>(m, "RingState")
      .def_property_readonly("radius", &RingState::radius)
      .def_property_readonly("circumference", &RingState::circumference)
      .def("amplitude", &RingState::amplitude, py::arg("x"), py::arg("t"))
      .def("mode_momentum", &RingState::mode_momentum, py::arg("n"));

  m.def("build_ring_state", &build_ring_state, py::arg("xbar"), py::arg("pbar"),
        py::arg("sigma0"), py::arg("radius"), py::arg("units"), py::arg("tail_epsilon") = 1e-8);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("grid", &Scenario::grid)
      .def_readonly("units", &Scenario::units)
      .def_property_readonly("normalization",
                             [](const Scenario& s) { return std::string(to_string(s.policy)); })
      .def_readonly("T", &Scenario::T)
      .def_property_readonly("state", [](const Scenario& s) -> py::object {
        if (const auto* line = std::get_if<Superposition>(&s.state)) return py::cast(*line);
        return py::cast(std::get<RingState>(s.state));
      })
      .def("serialize", [](const Scenario& s) { return serialize_scenario(s); });

  m.def("make_scenario_preset",
        [](const std::string& id) { return make_scenario_preset(parse_figure_id(id)); },
        py::arg("figure_id"));
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); },
        py::arg("text"));
  m.def("overtaking_partner", &overtaking_partner, py::arg("x0"), py::arg("p0"), py::arg("p1"));

  py::class_<ToaCurve>(m, "ToaCurve")
      .def_readonly("grid", &ToaCurve::grid)
      .def_readonly("values", &ToaCurve::values)
      .def_property_readonly("method",
                             [](const ToaCurve& c) { return std::string(to_string(c.method)); })
      .def_property_readonly("normalization_constant",
                             [](const ToaCurve& c) { return c.normalization.constant; })
      .def_readonly("negativity_flag", &ToaCurve::negativity_flag)
      .def("times", [](const ToaCurve& c) { return c.grid.points(); })
      .def("peak", &ToaCurve::peak);

  m.def(
      "compute_curve",
      [](const std::string& method, const Scenario& s, std::optional<std::string> normalization,
         std::optional<double> T) {
        ToaOptions opts;
        opts.policy = normalization ? parse_normalization_policy(*normalization) : s.policy;
        opts.T = T ? T : s.T;
        return compute_curve(parse_toa_method(method), s.detector_frame_state(), s.grid, opts);
      },
      py::arg("method"), py::arg("scenario"), py::arg("normalization") = std::nullopt,
      py::arg("T") = std::nullopt);
  m.def(
      "compute_state_curve",
      [](const std::string& method, const Superposition& state, const TimeGrid& grid,
         const std::string& normalization, std::optional<double> T) {
        return compute_curve(parse_toa_method(method), State{state}, grid,
                             make_options(normalization, T));
      },
      py::arg("method"), py::arg("state"), py::arg("grid"), py::arg("normalization") = "full",
      py::arg("T") = std::nullopt);

  m.def(
      "detect_backflow",
      [](const ToaCurve& c) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& b : detect_backflow(c)) out.emplace_back(b.times.lo, b.times.hi, b.min_value);
        return out;
      },
      py::arg("curve"));
  m.def("fringe_visibility",
        [](const ToaCurve& c, double lo, double hi) { return fringe_visibility(c, {lo, hi}); },
        py::arg("curve"), py::arg("lo"), py::arg("hi"));

  m.def("bin_probability",
        [](const ToaCurve& c, double lo, double hi) { return bin_probability(c, {lo, hi}); },
        py::arg("curve"), py::arg("lo"), py::arg("hi"));
  m.def("separation_D",
        [](const ToaCurve& a, const ToaCurve& b, double lo, double hi) {
          return separation_D(a, b, {lo, hi});
        },
        py::arg("c1"), py::arg("c2"), py::arg("lo"), py::arg("hi"));
  m.def("min_samples", &min_samples, py::arg("f_k"), py::arg("D"));
  m.def(
      "discrimination_report",
      [](const ToaCurve& a, const ToaCurve& b, double lo, double hi) {
        const DiscriminationReport r = discrimination_report(a, b, {lo, hi});
        py::dict d;
        d["bin"] = py::make_tuple(r.bin.lo, r.bin.hi);
        d["f_k"] = r.f_k;
        d["D"] = r.D;
        d["f_bound"] = r.f_bound;
        d["N_s_min"] = r.N_s_min;
        d["epsilon_k"] = r.epsilon_k;
        return d;
      },
      py::arg("c1"), py::arg("c2"), py::arg("lo"), py::arg("hi"));
  m.def(
      "sample_clicks",
      [](const ToaCurve& c, long long n, std::uint64_t seed) { return sample_clicks(c, n, seed).times; },
      py::arg("curve"), py::arg("n"), py::arg("seed"));
  m.def(
      "chi_square_test",
      [](const std::vector<double>& times, const ToaCurve& candidate, const std::vector<double>& edges) {
        ClickSample sample;
        sample.times = times;
        const ChiSquareResult r = chi_square_test(sample, candidate, BinSpec{edges});
        return py::make_tuple(r.chi2, r.dof, r.p_value);
      },
      py::arg("times"), py::arg("candidate"), py::arg("edges"));
}
