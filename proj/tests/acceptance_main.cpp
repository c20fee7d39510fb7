#include <iostream>

#include <CLI11.hpp>

#include "isotwirl/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"isotwirl acceptance checks"};
  int criterion = 0;
  int threads = 1;
  bool quiet = false;
  app.add_option("--criterion", criterion, "criterion to run (1-11, default all)")->check(CLI::Range(0, 11));
  app.add_option("--threads", threads, "worker threads for the Monte Carlo criteria")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "only print the PASS/FAIL lines");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  int lo = criterion ? criterion : 1, hi = criterion ? criterion : isotwirl::kNumCriteria;
  for (int id = lo; id <= hi; ++id) {
    auto r = isotwirl::run_criterion(id, threads);
    std::cout << r.line() << '\n';
    if (!quiet)
      for (const auto& d : r.details) std::cout << "    " << d << '\n';
    std::cout.flush();
    failures += !r.pass;
  }
  return failures ? 1 : 0;
}
