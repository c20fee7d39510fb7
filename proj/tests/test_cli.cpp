#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isotwirl/scenario.hpp"

using namespace isotwirl;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("isotwirl_test_" + name);
  fs::remove_all(p);
  return p;
}

const char* kCb = R"(
[model]
type = cb
omegas = 0.3, 1.1, 0.7
[series]
ensembles = haar, clifford, doped:2
probes = loschmidt2, otoc4
[time]
t_min = 0.1
t_max = 5
points = 6
[oracle]
enabled = true
samples = 1000
seed = 3
)";

}  // namespace

TEST_CASE("scenario parsing") {
  Scenario sc = parse_scenario(kCb);
  CHECK(sc.model.kind == ModelSpec::Kind::CB);
  CHECK(sc.model.N == 3);
  CHECK(sc.ensembles.size() == 3);
  CHECK(sc.ensembles[2].k == 2);
  CHECK(sc.probes.size() == 2);
  CHECK(sc.time.points == 6);
  CHECK(sc.oracle.enabled);
  CHECK(scenario_dimension(sc) == 8);
}

TEST_CASE("scenario errors name the offending field") {
  auto msg = [](const std::string& text) {
    try {
      parse_scenario(text);
    } catch (const ScenarioError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg("[model]\ntype = cb\nomegas = 1, x\n").find("model.omegas") != std::string::npos);
  CHECK(msg("[model]\ntype = ising\n").find("model.type") != std::string::npos);
  CHECK(msg("[model]\ntype = cb\nomegas = 1\ncolour = red\n").find("colour") != std::string::npos);
  CHECK(msg("[series]\nspectral_average = gde\ndimension = 16\n[model]\ntype = toric\n").find("mutually exclusive") !=
        std::string::npos);
  CHECK(msg("[series]\nspectral_average = gde\n").find("series.dimension") != std::string::npos);
  CHECK(msg("[model]\ntype = cb\nomegas = 1\n[series]\nensembles = doped:1:0\n").find("series.ensembles") !=
        std::string::npos);
  CHECK(msg("[model]\ntype = cb\nomegas = 1\n[time]\nspacing = log\nt_min = 0\n").find("time") != std::string::npos);
  CHECK(msg("[bogus]\nx = 1\n").find("unknown section") != std::string::npos);
}

TEST_CASE("runs are reproducible and write a manifest") {
  Scenario sc = parse_scenario(kCb);
  fs::path a = scratch("a"), b = scratch("b");
  auto ra = run_scenario(sc, {a.string(), std::nullopt, 1});
  auto rb = run_scenario(sc, {b.string(), std::nullopt, 2});
  CHECK(ra.d == 8);
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    fs::path fa = ra.files[i], fb = rb.files[i];
    CHECK(fa.filename() == fb.filename());
    if (fa.extension() == ".csv") CHECK(slurp(fa) == slurp(fb));
  }
  CHECK(fs::exists(a / "manifest.json"));
  CHECK(fs::exists(a / "sff.csv"));
  CHECK(fs::exists(a / "oracle_loschmidt2_clifford.csv"));
  std::string manifest = slurp(a / "manifest.json");
  CHECK(manifest.find("\"seed\"") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("shipped scenarios parse") {
  for (const auto& e : fs::directory_iterator(fs::path(ISOTWIRL_SOURCE_DIR) / "scenarios"))
    if (e.path().extension() == ".ini") {
      CAPTURE(e.path().string());
      CHECK_NOTHROW(load_scenario(e.path().string()));
    }
}

TEST_CASE("tables are written") {
  fs::path out = scratch("tables");
  auto files = write_tables(16, M_PI / 4, out.string());
  CHECK(files.size() == 3);
  for (const auto& f : files) CHECK(fs::file_size(f) > 0);
  fs::remove_all(out);
}
