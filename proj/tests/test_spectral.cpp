#include <doctest.h>

#include <cmath>
#include <random>

#include "isotwirl/spectral.hpp"

using namespace isotwirl;

namespace {

Spectrum random_spectrum(long d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Spectrum s(d);
  for (auto& e : s) e = g(rng);
  return s;
}

}  // namespace

TEST_CASE("O(d) form factors agree with brute force sums") {
  for (long d : {2L, 4L, 8L, 16L}) {
    Spectrum s = random_spectrum(d, 7 + d);
    for (double t : {0.0, 0.37, 2.1, 9.5}) {
      auto a = sff_stabilizer(s, t), b = sff_bruteforce(s, t);
      CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-10));
      CHECK(a.g2_2t == doctest::Approx(b.g2_2t).epsilon(1e-10));
      CHECK(std::abs(a.g3 - b.g3) < 1e-9 * std::max(1.0, std::abs(b.g3)));
      CHECK(a.g4 == doctest::Approx(b.g4).epsilon(1e-10));
      CHECK(sff_clifford_cb(s, t) == doctest::Approx(sff_clifford_cb_direct(s, t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("form factors at t = 0") {
  Spectrum s = random_spectrum(8, 3);
  auto f = sff_stabilizer(s, 0.0);
  CHECK(f.g2 == doctest::Approx(64));
  CHECK(f.g4 == doctest::Approx(4096));
  CHECK(f.g3tilde == doctest::Approx(64));
  CHECK(f.stabilizer_valid);
  CHECK_FALSE(sff_explicit(s, 0.0).stabilizer_valid);
  CHECK_THROWS(sff_stabilizer(random_spectrum(6, 1), 0.3));
}

TEST_CASE("GDE averages") {
  for (long d : {4L, 16L}) {
    auto f0 = gde_averages(d, 0.0);
    double x = d;
    CHECK(f0.g2 == doctest::Approx(x * x));
    CHECK(f0.g4 == doctest::Approx(x * x * x * x));
    auto late = gde_averages(d, 1e4);
    CHECK(late.g2 == doctest::Approx(x).epsilon(1e-6));
    CHECK(late.g4 == doctest::Approx(2 * x * x - x).epsilon(1e-6));
  }
}

TEST_CASE("GUE averages: initial value and plateaus") {
  const long d = 64;
  auto f0 = gue_averages(d, 0.0);
  CHECK(f0.g2 == doctest::Approx(64.0 * 64.0));
  auto late = gue_averages(d, 10.0 * d);
  CHECK(late.g2 == doctest::Approx(64.0).epsilon(0.01));
  CHECK(late.g3tilde == doctest::Approx(128.0).epsilon(0.05));
  CHECK(gue_r2(d, 3.0 * d) == 0.0);
  CHECK(gue_r1(0.0) == 1.0);
}

TEST_CASE("time grids") {
  auto lin = time_grid(0.0, 1.0, 5, false);
  CHECK(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  auto lg = time_grid(0.1, 10.0, 3, true);
  CHECK(lg[1] == doctest::Approx(1.0));
  CHECK_THROWS(time_grid(0.0, 1.0, 3, true));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("envelope times are ordered") {
  auto e = envelope_times(1024);
  CHECK_FALSE(e.features.empty());
  CHECK(e.g2_equilibration > 0);
}
