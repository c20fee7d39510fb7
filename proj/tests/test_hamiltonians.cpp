#include <doctest.h>

#include <cmath>

#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/oracle.hpp"

using namespace isotwirl;

TEST_CASE("commuting-Pauli spectrum matches the dense Hamiltonian") {
  std::vector<double> om = {0.3, 1.1, 0.7};
  Spectrum s = cb_spectrum(om);
  auto diag = cb_hamiltonian_diagonal(om);
  REQUIRE(s.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(s[i] == doctest::Approx(diag[i]));
  CHECK(s[0] == doctest::Approx(2.1));
  CHECK(s[7] == doctest::Approx(-2.1));
}

TEST_CASE("toric code stabilizers") {
  for (int N : {2, 3}) {
    auto st = toric_stabilizers(N);
    CHECK(st.size() == static_cast<std::size_t>(2 * N * N));
    for (const auto& s : st) CHECK(s.qubits.size() == 4);
    // every X-type and Z-type pair overlaps on an even number of qubits
    for (const auto& a : st)
      for (const auto& b : st)
        if (a.x_type && !b.x_type) {
          int overlap = 0;
          for (int q : a.qubits)
            for (int r : b.qubits) overlap += q == r;
          CHECK(overlap % 2 == 0);
        }
  }
}

TEST_CASE("toric levels: ground-state degeneracy and total dimension") {
  for (int N : {2, 3, 4}) {
    auto lv = toric_levels(N, 1.0);
    double total = 0;
    for (const auto& l : lv) total += l.multiplicity;
    CHECK(total == doctest::Approx(std::ldexp(1.0, 2 * N * N)));
    CHECK(lv.front().energy == doctest::Approx(-2.0 * N * N));
    CHECK(lv.front().multiplicity == doctest::Approx(4.0));
  }
}

TEST_CASE("toric closed forms agree with the explicit spectrum") {
  const double J = 0.8;
  Spectrum s = toric_spectrum(2, J);
  for (double t : {0.1, 0.9, 3.7}) {
    auto a = toric_sff(2, J, t), b = sff_stabilizer(s, t);
    CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-10));
    CHECK(a.g4 == doctest::Approx(b.g4).epsilon(1e-10));
    CHECK(a.g3tilde == doctest::Approx(b.g3tilde).epsilon(1e-10));
    CHECK(std::abs(toric_trace(2, J, t) - toric_dense_v(2, J, t).trace()) < 1e-8);
  }
  CHECK_THROWS(toric_spectrum(4, 1.0));
}
