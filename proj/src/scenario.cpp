#include "isotwirl/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/version.hpp>
#include <Eigen/Core>
#include <gmp.h>
#include <json.hpp>

#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/oracle.hpp"
#include "isotwirl/twirl_engine.hpp"
#include "isotwirl/weingarten.hpp"

namespace isotwirl {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ScenarioError("scenario field '" + field + "': " + what);
}

template <class T>
T get_value(const pt::ptree& sec, const std::string& section, const std::string& key, T fallback) {
  auto v = sec.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream is(trim(*v));
  T out;
  if constexpr (std::is_same_v<T, bool>) {
    std::string w;
    is >> w;
    if (w == "true" || w == "1" || w == "yes") return true;
    if (w == "false" || w == "0" || w == "no") return false;
    field_error(section + "." + key, "expected a boolean, got '" + *v + "'");
  } else {
    if (!(is >> out) || !(is >> std::ws).eof()) field_error(section + "." + key, "cannot parse '" + *v + "'");
    return out;
  }
}

void check_keys(const pt::ptree& sec, const std::string& section, std::set<std::string> allowed) {
  for (const auto& [k, v] : sec)
    if (!allowed.count(k)) field_error(section + "." + k, "unknown key");
}

std::string ensemble_label(const EnsembleSpec& e) {
  if (e.kind != EnsembleSpec::Kind::Doped) return to_string(e.kind);
  std::string s = "doped_k" + std::to_string(e.k);
  if (std::abs(e.theta - M_PI / 4) > 1e-15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "_theta%.6g", e.theta);
    s += buf;
  }
  return s;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << "\n";
  }
  void row(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << format_double(v[i]);
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

const char* model_name(ModelSpec::Kind k) {
  switch (k) {
    case ModelSpec::Kind::None: return "none";
    case ModelSpec::Kind::CB: return "cb";
    case ModelSpec::Kind::Toric: return "toric";
    case ModelSpec::Kind::Raw: return "raw";
  }
  return "?";
}

const char* average_name(SpectralAverage a) {
  switch (a) {
    case SpectralAverage::None: return "none";
    case SpectralAverage::GDE: return "gde";
    case SpectralAverage::GUE: return "gue";
  }
  return "?";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scenario parse_scenario(const std::string& text, const std::string& base_dir) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ScenarioError("scenario line " + std::to_string(e.line()) + ": " + e.message());
  }
  Scenario sc;
  sc.base_dir = base_dir;
  for (const auto& [name, sec] : tree)
    if (name != "model" && name != "series" && name != "time" && name != "oracle" && name != "output")
      field_error(name, "unknown section");

  if (auto m = tree.get_child_optional("model")) {
    check_keys(*m, "model", {"type", "N", "omegas", "omega_seed", "J", "file"});
    std::string type = trim(m->get<std::string>("type", ""));
    if (type == "cb") {
      sc.model.kind = ModelSpec::Kind::CB;
      if (auto om = m->get_optional<std::string>("omegas")) {
        for (const auto& w : split_list(*om)) {
          try {
            sc.model.omegas.push_back(std::stod(w));
          } catch (const std::exception&) {
            field_error("model.omegas", "cannot parse '" + w + "'");
          }
        }
      }
      sc.model.N = get_value<int>(*m, "model", "N", static_cast<int>(sc.model.omegas.size()));
      if (m->get_optional<std::string>("omega_seed"))
        sc.model.omega_seed = get_value<std::uint64_t>(*m, "model", "omega_seed", 0);
      if (sc.model.omegas.empty() && !sc.model.omega_seed) field_error("model.omegas", "give omegas or omega_seed");
      if (!sc.model.omegas.empty() && static_cast<int>(sc.model.omegas.size()) != sc.model.N)
        field_error("model.N", "does not match the number of omegas");
      if (sc.model.N < 1 || sc.model.N > 24) field_error("model.N", "must be in 1..24");
    } else if (type == "toric") {
      sc.model.kind = ModelSpec::Kind::Toric;
      sc.model.N = get_value<int>(*m, "model", "N", 2);
      sc.model.J = get_value<double>(*m, "model", "J", 1.0);
      if (sc.model.N < 2 || sc.model.N > 5) field_error("model.N", "toric code needs N in 2..5");
    } else if (type == "raw") {
      sc.model.kind = ModelSpec::Kind::Raw;
      sc.model.file = trim(m->get<std::string>("file", ""));
      if (sc.model.file.empty()) field_error("model.file", "missing");
    } else {
      field_error("model.type", "expected cb, toric or raw, got '" + type + "'");
    }
  }

  if (auto s = tree.get_child_optional("series")) {
    check_keys(*s, "series", {"ensembles", "probes", "spectral_average", "dimension", "sff"});
    try {
      for (const auto& e : split_list(s->get<std::string>("ensembles", ""))) sc.ensembles.push_back(parse_ensemble(e));
    } catch (const std::invalid_argument& e) {
      field_error("series.ensembles", e.what());
    }
    try {
      for (const auto& p : split_list(s->get<std::string>("probes", ""))) sc.probes.push_back(parse_probe(p));
    } catch (const std::invalid_argument& e) {
      field_error("series.probes", e.what());
    }
    std::string avg = trim(s->get<std::string>("spectral_average", "none"));
    if (avg == "gde")
      sc.average = SpectralAverage::GDE;
    else if (avg == "gue")
      sc.average = SpectralAverage::GUE;
    else if (avg != "none")
      field_error("series.spectral_average", "expected none, gde or gue");
    sc.dimension = get_value<long>(*s, "series", "dimension", 0);
    sc.sff = get_value<bool>(*s, "series", "sff", true);
  }

  if (sc.average != SpectralAverage::None) {
    if (sc.model.kind != ModelSpec::Kind::None)
      field_error("series.spectral_average", "spectral averages and an explicit [model] are mutually exclusive");
    if (sc.dimension < 2) field_error("series.dimension", "required (>= 2) with a spectral average");
  } else if (sc.model.kind == ModelSpec::Kind::None) {
    field_error("model", "missing (or set series.spectral_average)");
  }
  if (!sc.probes.empty() && sc.ensembles.empty()) field_error("series.ensembles", "probes need at least one ensemble");

  if (auto t = tree.get_child_optional("time")) {
    check_keys(*t, "time", {"t_min", "t_max", "points", "spacing"});
    sc.time.t_min = get_value<double>(*t, "time", "t_min", sc.time.t_min);
    sc.time.t_max = get_value<double>(*t, "time", "t_max", sc.time.t_max);
    sc.time.points = get_value<int>(*t, "time", "points", sc.time.points);
    std::string sp = trim(t->get<std::string>("spacing", "linear"));
    if (sp != "linear" && sp != "log") field_error("time.spacing", "expected linear or log");
    sc.time.log = sp == "log";
    try {
      time_grid(sc.time.t_min, sc.time.t_max, sc.time.points, sc.time.log);
    } catch (const std::invalid_argument& e) {
      field_error("time", e.what());
    }
  }

  if (auto o = tree.get_child_optional("oracle")) {
    check_keys(*o, "oracle", {"enabled", "samples", "seed"});
    sc.oracle.enabled = get_value<bool>(*o, "oracle", "enabled", false);
    sc.oracle.samples = get_value<long>(*o, "oracle", "samples", sc.oracle.samples);
    sc.oracle.seed = get_value<std::uint64_t>(*o, "oracle", "seed", sc.oracle.seed);
    if (sc.oracle.enabled && sc.average != SpectralAverage::None)
      field_error("oracle.enabled", "the oracle needs an explicit model spectrum");
  }
  if (auto o = tree.get_child_optional("output")) {
    check_keys(*o, "output", {"gnuplot"});
    sc.gnuplot = get_value<bool>(*o, "output", "gnuplot", false);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  fs::path p(path);
  return parse_scenario(ss.str(), p.has_parent_path() ? p.parent_path().string() : ".");
}

Spectrum model_spectrum(const Scenario& sc, std::optional<std::uint64_t> seed) {
  switch (sc.model.kind) {
    case ModelSpec::Kind::CB: {
      std::vector<double> om = sc.model.omegas;
      if (om.empty()) {
        Rng rng = make_rng(seed.value_or(*sc.model.omega_seed), 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < sc.model.N; ++i) om.push_back(u(rng));
      }
      return cb_spectrum(om);
    }
    case ModelSpec::Kind::Toric: return toric_spectrum(sc.model.N, sc.model.J);
    case ModelSpec::Kind::Raw: {
      fs::path p = fs::path(sc.model.file).is_absolute() ? fs::path(sc.model.file) : fs::path(sc.base_dir) / sc.model.file;
      std::ifstream in(p);
      if (!in) throw ScenarioError("model.file: cannot open '" + p.string() + "'");
      Spectrum s;
      double e;
      while (in >> e) s.push_back(e);
      if (!in.eof()) throw ScenarioError("model.file: non-numeric entry in '" + p.string() + "'");
      if (s.empty()) throw ScenarioError("model.file: empty spectrum");
      return s;
    }
    case ModelSpec::Kind::None: break;
  }
  throw ScenarioError("no explicit model spectrum (spectral average scenario)");
}

long scenario_dimension(const Scenario& sc) {
  if (sc.average != SpectralAverage::None) return sc.dimension;
  switch (sc.model.kind) {
    case ModelSpec::Kind::CB: return 1L << sc.model.N;
    case ModelSpec::Kind::Toric: return 1L << (2 * sc.model.N * sc.model.N);
    default: return static_cast<long>(model_spectrum(sc).size());
  }
}

FormFactors scenario_form_factors(const Scenario& sc, const Spectrum& spectrum, double t) {
  switch (sc.average) {
    case SpectralAverage::GDE: return gde_averages(sc.dimension, t);
    case SpectralAverage::GUE: return gue_averages(sc.dimension, t);
    case SpectralAverage::None: break;
  }
  switch (sc.model.kind) {
    case ModelSpec::Kind::Toric: return toric_sff(sc.model.N, sc.model.J, t);
    case ModelSpec::Kind::CB: return sff_stabilizer(spectrum, t);
    default: return sff_explicit(spectrum, t);
  }
}

RunSummary run_scenario(const Scenario& sc, const RunOptions& opts) {
  fs::create_directories(opts.out_dir);
  fs::path out(opts.out_dir);
  RunSummary sum;
  long d = scenario_dimension(sc);
  sum.d = d;
  std::uint64_t seed = opts.seed.value_or(sc.oracle.seed);
  auto times = time_grid(sc.time.t_min, sc.time.t_max, sc.time.points, sc.time.log);

  // the toric model uses closed forms; only the oracle needs its spectrum
  Spectrum spectrum;
  bool need_spectrum = sc.average == SpectralAverage::None && sc.model.kind != ModelSpec::Kind::Toric;
  if (need_spectrum) spectrum = model_spectrum(sc, opts.seed);
  std::vector<FormFactors> ffs;
  for (double t : times) ffs.push_back(scenario_form_factors(sc, spectrum, t));

  std::vector<std::pair<std::string, std::string>> series;  // file, label
  auto add_file = [&](const std::string& name, const std::string& label) {
    sum.files.push_back((out / name).string());
    series.emplace_back(name, label);
  };

  if (sc.sff) {
    CsvWriter w(out / "sff.csv", "t,g2,g2_2t,g3_re,g3_im,g4,g3tilde");
    for (const auto& f : ffs)
      w.row({f.t, f.g2, f.g2_2t, f.g3.real(), f.g3.imag(), f.g4, f.stabilizer_valid ? f.g3tilde : NAN});
    add_file("sff.csv", "g2");
  }

  for (ProbeKind p : sc.probes)
    for (const auto& e : sc.ensembles) {
      std::string name = std::string(to_string(p)) + "_" + ensemble_label(e) + ".csv";
      std::vector<double> vals;
      for (const auto& f : ffs) vals.push_back(probe_value(p, f, e));
      CsvWriter w(out / name, "t,value");
      for (std::size_t i = 0; i < times.size(); ++i) w.row({times[i], vals[i]});
      add_file(name, std::string(to_string(p)) + " " + e.str());
    }

  if (sc.oracle.enabled && !sc.probes.empty()) {
    if (sc.model.kind == ModelSpec::Kind::Toric) spectrum = model_spectrum(sc);
    for (const auto& e : sc.ensembles) {
      McRequest req{spectrum, e, sc.probes, times, sc.oracle.samples, seed, opts.threads};
      auto est = mc_twirl_grid(req);
      for (std::size_t p = 0; p < sc.probes.size(); ++p) {
        std::string name = std::string("oracle_") + to_string(sc.probes[p]) + "_" + ensemble_label(e) + ".csv";
        CsvWriter w(out / name, "t,value,stderr");
        for (std::size_t i = 0; i < times.size(); ++i) w.row({times[i], est[p][i].mean, est[p][i].stderr_});
        add_file(name, std::string("oracle ") + to_string(sc.probes[p]) + " " + e.str());
      }
    }
  }

  json manifest;
  manifest["version"] = kVersion;
  manifest["libraries"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                         "." + std::to_string(EIGEN_MINOR_VERSION)},
                           {"boost", BOOST_LIB_VERSION},
                           {"gmp", gmp_version}};
  manifest["seed"] = seed;
  manifest["d"] = d;
  json model = {{"type", model_name(sc.model.kind)}};
  if (sc.model.kind == ModelSpec::Kind::CB) {
    model["N"] = sc.model.N;
    if (!sc.model.omegas.empty()) model["omegas"] = sc.model.omegas;
    if (sc.model.omega_seed) model["omega_seed"] = opts.seed.value_or(*sc.model.omega_seed);
  } else if (sc.model.kind == ModelSpec::Kind::Toric) {
    model["N"] = sc.model.N;
    model["J"] = sc.model.J;
  } else if (sc.model.kind == ModelSpec::Kind::Raw) {
    model["file"] = sc.model.file;
  }
  manifest["model"] = model;
  manifest["spectral_average"] = average_name(sc.average);
  manifest["time"] = {{"t_min", sc.time.t_min}, {"t_max", sc.time.t_max}, {"points", sc.time.points},
                      {"spacing", sc.time.log ? "log" : "linear"}};
  json ens = json::array();
  for (const auto& e : sc.ensembles) ens.push_back({{"kind", to_string(e.kind)}, {"k", e.k}, {"theta", e.theta}});
  manifest["ensembles"] = ens;
  json probes = json::array();
  for (ProbeKind p : sc.probes) probes.push_back(to_string(p));
  manifest["probes"] = probes;
  if (sc.oracle.enabled) manifest["oracle"] = {{"samples", sc.oracle.samples}, {"seed", seed}, {"threads_independent", true}};

  // table-driven vs printed closed forms on this grid
  json mism = json::array();
  long root = std::lround(std::sqrt(static_cast<double>(d)));
  bool stabilizer = std::all_of(ffs.begin(), ffs.end(), [](const FormFactors& f) { return f.stabilizer_valid; });
  if (is_power_of_two(d) && d >= 8 && root * root == d && stabilizer) {
    for (ProbeKind p : sc.probes)
      for (const auto& e : sc.ensembles) {
        MismatchReport r = compare_with_printed(p, e, d, ffs, 1e-10);
        if (r.failures == 0) continue;
        json coeffs;
        for (const auto& [k, v] : r.coefficient_diffs) coeffs[k] = {v.first, v.second};
        mism.push_back({{"probe", to_string(p)},
                        {"ensemble", e.str()},
                        {"max_rel_error", r.max_rel_error},
                        {"failures", r.failures},
                        {"points", r.points},
                        {"coefficients_table_vs_printed", coeffs}});
      }
  }
  manifest["closed_form_mismatches"] = mism;
  json files = json::array();
  for (const auto& [f, l] : series) files.push_back(f);
  manifest["files"] = files;

  if (sc.gnuplot && !series.empty()) {
    std::ofstream gp(out / "plot.gp");
    gp << "set datafile separator ','\nset key outside\nset xlabel 't'\n";
    if (sc.time.log) gp << "set logscale x\n";
    gp << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i)
      gp << (i ? ", \\\n     " : "") << "'" << series[i].first << "' using 1:2 every ::1 with lines title '"
         << series[i].second << "'";
    gp << "\n";
    sum.files.push_back((out / "plot.gp").string());
  }

  std::ofstream mf(out / "manifest.json");
  mf << manifest.dump(2) << "\n";
  sum.files.push_back((out / "manifest.json").string());
  return sum;
}

std::vector<std::string> write_tables(long d, double theta, const std::string& out_dir) {
  if (!is_power_of_two(d) || d < 2) throw std::invalid_argument("tables: d must be 2^N");
  fs::create_directories(out_dir);
  fs::path out(out_dir);
  std::vector<std::string> files;

  {
    std::ofstream w(out / "weingarten.csv");
    w << "kind,class,inversion,characters,tabulated\n";
    for (WeingartenKind k : {WeingartenKind::PlainS2, WeingartenKind::Plain, WeingartenKind::Plus, WeingartenKind::Minus}) {
      auto inv = weingarten_by_inversion(k, d), chr = weingarten_by_characters(k, d);
      std::vector<std::string> tab(inv.values.size());
      if (k == WeingartenKind::Plus || k == WeingartenKind::Minus) {
        auto t = weingarten_tabulated(k, d);
        for (std::size_t i = 0; i < tab.size() && i < t.values.size(); ++i) tab[i] = t.values[i].get_str();
      } else if (k == WeingartenKind::Plain) {
        auto t = weingarten_plain_closed_form(d);
        for (std::size_t i = 0; i < tab.size() && i < t.values.size(); ++i) tab[i] = t.values[i].get_str();
      }
      for (std::size_t i = 0; i < inv.values.size(); ++i)
        w << to_string(k) << "," << inv.classes[i] << "," << inv.values[i].get_str() << "," << chr.values[i].get_str()
          << "," << tab[i] << "\n";
    }
    files.push_back((out / "weingarten.csv").string());
  }
  {
    std::ofstream w(out / "gram_fourier.csv");
    w << "kind,irrep,fourier,D_lambda,D_lambda_tabulated\n";
    for (GramKind k : {GramKind::Plain, GramKind::QProjected, GramKind::QPerpProjected})
      for (int l = 0; l < kNumIrreps; ++l)
        w << to_string(k) << ",lambda" << l + 1 << "," << gram_fourier(k, d, l).get_str() << ","
          << dlambda(k, d, l).get_str() << "," << dlambda_table(k, d, l).get_str() << "\n";
    files.push_back((out / "gram_fourier.csv").string());
  }
  {
    std::ofstream w(out / "doping.csv");
    DopingSpectrum s = doping_spectrum(d, theta);
    XiClosedForm c = xi_closed_form(d, theta);
    w << "irrep,xi,lambda,xi_numeric,lambda_numeric,continued\n";
    for (int l = 0; l < kNumIrreps; ++l) {
      const auto& b = s.blocks[l];
      w << "lambda" << l + 1 << "," << b.xi.get_str() << "," << b.lambda.get_str() << "," << format_double(b.xi.get_d())
        << "," << format_double(b.lambda.get_d()) << "," << (b.continued ? "true" : "false") << "\n";
    }
    w << "closed_xi_plus,,," << format_double(c.xi_plus) << ",,\n";
    w << "closed_xi_minus,,," << format_double(c.xi_minus) << ",,\n";
    w << "closed_xi_one,,," << format_double(c.xi_one) << ",,\n";
    files.push_back((out / "doping.csv").string());
  }
  return files;
}

}  // namespace isotwirl
