#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isotwirl/acceptance.hpp"
#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/oracle.hpp"
#include "isotwirl/probes.hpp"
#include "isotwirl/spectral.hpp"
#include "isotwirl/twirl_engine.hpp"
#include "isotwirl/weingarten.hpp"

namespace py = pybind11;
using namespace isotwirl;

namespace {

WeingartenKind weingarten_kind(const std::string& s) {
  if (s == "plain") return WeingartenKind::Plain;
  if (s == "plain_s2") return WeingartenKind::PlainS2;
  if (s == "plus") return WeingartenKind::Plus;
  if (s == "minus") return WeingartenKind::Minus;
  throw py::value_error("kind must be plain, plain_s2, plus or minus");
}

}  // namespace

PYBIND11_MODULE(_isotwirl, m) {
  m.doc() = "isospectral twirling closed forms and Monte Carlo oracle";

  py::class_<FormFactors>(m, "FormFactors")
      .def_readonly("t", &FormFactors::t)
      .def_readonly("d", &FormFactors::d)
      .def_readonly("g2", &FormFactors::g2)
      .def_readonly("g2_2t", &FormFactors::g2_2t)
      .def_readonly("g3", &FormFactors::g3)
      .def_readonly("g4", &FormFactors::g4)
      .def_readonly("g3tilde", &FormFactors::g3tilde)
      .def_readonly("stabilizer_valid", &FormFactors::stabilizer_valid)
      .def("__repr__", [](const FormFactors& f) {
        return "FormFactors(t=" + std::to_string(f.t) + ", d=" + std::to_string(f.d) + ", g2=" + std::to_string(f.g2) +
               ")";
      });

  m.def("sff_explicit", &sff_explicit, py::arg("spectrum"), py::arg("t"));
  m.def("sff_stabilizer", &sff_stabilizer, py::arg("spectrum"), py::arg("t"));
  m.def("gde_averages", &gde_averages, py::arg("d"), py::arg("t"));
  m.def("gue_averages", &gue_averages, py::arg("d"), py::arg("t"));
  m.def("toric_sff", &toric_sff, py::arg("N"), py::arg("J"), py::arg("t"));
  m.def("cb_spectrum", &cb_spectrum, py::arg("omegas"));
  m.def("time_grid", &time_grid, py::arg("t_min"), py::arg("t_max"), py::arg("points"), py::arg("log_spaced") = false);

  m.def("probe_names", [] {
    std::vector<std::string> v;
    for (auto p : all_probes()) v.push_back(to_string(p));
    return v;
  });
  m.def(
      "probe",
      [](const std::string& probe, const FormFactors& ff, const std::string& ensemble) {
        return probe_value(parse_probe(probe), ff, parse_ensemble(ensemble));
      },
      py::arg("probe"), py::arg("ff"), py::arg("ensemble"),
      "Closed-form probe value; ensemble is 'haar', 'clifford' or 'doped:k[:theta]'.");

  m.def(
      "weingarten",
      [](const std::string& kind, long d, const std::string& route) {
        auto k = weingarten_kind(kind);
        auto w = route == "characters" ? weingarten_by_characters(k, d) : weingarten_by_inversion(k, d);
        py::dict out;
        for (std::size_t i = 0; i < w.classes.size(); ++i) out[py::str(w.classes[i])] = w.values[i].get_str();
        return out;
      },
      py::arg("kind"), py::arg("d"), py::arg("route") = "inversion", "Weingarten class function as exact fractions.");
  m.def(
      "xi_closed_form",
      [](long d, double theta) {
        auto x = xi_closed_form(d, theta);
        return py::make_tuple(x.xi_plus, x.xi_minus, x.xi_one);
      },
      py::arg("d"), py::arg("theta") = M_PI / 4);

  m.def(
      "mc_twirl",
      [](const std::string& probe, const Spectrum& s, double t, const std::string& ensemble, long samples,
         std::uint64_t seed, int threads) {
        Estimate e;
        {
          py::gil_scoped_release release;
          e = mc_twirl(parse_probe(probe), s, t, parse_ensemble(ensemble), samples, seed, threads);
        }
        return py::make_tuple(e.mean, e.stderr_);
      },
      py::arg("probe"), py::arg("spectrum"), py::arg("t"), py::arg("ensemble"), py::arg("samples") = 10000,
      py::arg("seed") = 1, py::arg("threads") = 1, "Dense Monte Carlo estimate (mean, standard error), N <= 3.");

  m.def(
      "run_criterion",
      [](int id, int threads) {
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, threads);
        }
        return py::make_tuple(r.pass, r.line(), r.details);
      },
      py::arg("id"), py::arg("threads") = 1);
}
