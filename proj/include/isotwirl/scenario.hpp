#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isotwirl/probes.hpp"
#include "isotwirl/spectral.hpp"

namespace isotwirl {

// Scenario files are INI-style:
//
//   [model]            type = cb | toric | raw
//                      N = 3, omegas = 0.3, 1.1, 0.7   (cb; or omega_seed = 42 for random U(0,1) frequencies)
//                      J = 1.0                         (toric)
//                      file = energies.txt             (raw; whitespace separated, relative to the scenario)
//   [series]           ensembles = haar, clifford, doped:3[:theta]
//                      probes = loschmidt2, otoc4, tmi_c2, tmi_cd, purity, coherence, wyd_pauli, wyd_cb
//                      spectral_average = none | gde | gue   (gde/gue replace [model]; then dimension = d)
//                      sff = true
//   [time]             t_min, t_max, points, spacing = linear | log
//   [oracle]           enabled = false, samples = 10000, seed = 1
//   [output]           gnuplot = false
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  enum class Kind { None, CB, Toric, Raw };
  Kind kind = Kind::None;
  int N = 0;
  std::vector<double> omegas;
  std::optional<std::uint64_t> omega_seed;
  double J = 1.0;
  std::string file;
};

enum class SpectralAverage { None, GDE, GUE };

struct TimeGridSpec {
  double t_min = 0.1, t_max = 10.0;
  int points = 50;
  bool log = false;
};

struct OracleSpec {
  bool enabled = false;
  long samples = 10000;
  std::uint64_t seed = 1;
};

struct Scenario {
  ModelSpec model;
  std::vector<EnsembleSpec> ensembles;
  std::vector<ProbeKind> probes;
  SpectralAverage average = SpectralAverage::None;
  long dimension = 0;  // for spectral averages
  bool sff = true;
  TimeGridSpec time;
  OracleSpec oracle;
  bool gnuplot = false;
  std::string base_dir = ".";
};

Scenario parse_scenario(const std::string& text, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

struct RunOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;  // overrides the oracle / omega seeds
  int threads = 1;
};

struct RunSummary {
  long d = 0;
  std::vector<std::string> files;  // written, in order
};

// The explicit spectrum of the model (cb / toric N <= 3 / raw).
Spectrum model_spectrum(const Scenario& sc, std::optional<std::uint64_t> seed = std::nullopt);
long scenario_dimension(const Scenario& sc);
FormFactors scenario_form_factors(const Scenario& sc, const Spectrum& spectrum, double t);

RunSummary run_scenario(const Scenario& sc, const RunOptions& opts);

// Weingarten, Gram Fourier and doping eigenvalue tables at dimension d as CSV files.
std::vector<std::string> write_tables(long d, double theta, const std::string& out_dir);

std::string format_double(double v);  // 17 significant digits

}  // namespace isotwirl
