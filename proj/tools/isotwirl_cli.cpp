#include <cstdint>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "isotwirl/acceptance.hpp"
#include "isotwirl/scenario.hpp"

using namespace isotwirl;

int main(int argc, char** argv) {
  CLI::App app{"isospectral twirling: closed-form probes of chaos, tables and Monte Carlo checks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate a scenario file and write CSV series + manifest.json");
  std::string scenario_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  run->add_option("scenario", scenario_path, "scenario .ini file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override oracle / omega seeds");
  run->add_option("-j,--threads", threads, "worker threads for the oracle")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  int criterion = 0;
  verify->add_option("--criterion", criterion, "single criterion (1-11)")->check(CLI::Range(1, 11));
  verify->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("tables", "write Weingarten, Gram Fourier and doping tables");
  long d = 0;
  double theta = M_PI / 4;
  std::string tables_out = "tables";
  tables->add_option("-d,--d", d, "dimension (power of two for the doping table)")->required()->check(CLI::Range(2L, 1L << 30));
  tables->add_option("--theta", theta, "doping angle");
  tables->add_option("-o,--out", tables_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Scenario sc = load_scenario(scenario_path);
      RunSummary s = run_scenario(sc, {out_dir, seed, threads});
      std::cout << "d = " << s.d << '\n';
      for (const auto& f : s.files) std::cout << f << '\n';
    } else if (*verify) {
      int failures = 0;
      for (int id = criterion ? criterion : 1; id <= (criterion ? criterion : kNumCriteria); ++id) {
        auto r = run_criterion(id, threads);
        std::cout << r.line() << '\n';
        for (const auto& line : r.details) std::cout << "    " << line << '\n';
        std::cout.flush();
        failures += !r.pass;
      }
      return failures ? 1 : 0;
    } else if (*tables) {
      for (const auto& f : write_tables(d, theta, tables_out)) std::cout << f << '\n';
    }
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
