#include <doctest.h>

#include <cmath>

#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/probes.hpp"
#include "isotwirl/spectral.hpp"

using namespace isotwirl;

TEST_CASE("probe and ensemble parsing") {
  for (ProbeKind p : all_probes()) CHECK(parse_probe(to_string(p)) == p);
  CHECK_THROWS(parse_probe("otoc8"));
  auto e = parse_ensemble("doped:3:0.5");
  CHECK(e.kind == EnsembleSpec::Kind::Doped);
  CHECK(e.k == 3);
  CHECK(e.theta == 0.5);
  CHECK(parse_ensemble("clifford").kind == EnsembleSpec::Kind::Clifford);
  CHECK_THROWS(parse_ensemble("doped:-1"));
  CHECK_THROWS(parse_ensemble("doped:2:3.141592653589793"));
  CHECK_THROWS(parse_ensemble("unitary"));
}

TEST_CASE("identity dynamics gives the trivial values") {
  const long d = 16;
  FormFactors ff = sff_stabilizer(Spectrum(d, 0.0), 0.0);
  for (auto ens : {EnsembleSpec::haar(), EnsembleSpec::clifford(), EnsembleSpec::doped(2)}) {
    CHECK(loschmidt2(ff, ens) == doctest::Approx(1.0));
    CHECK(otoc4(ff, ens) == doctest::Approx(1.0));
    CHECK(coherence_l2(ff, ens) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wyd_skew(ff, ens, WydVariant::Pauli) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(purity_bound(ff, ens).purity == doctest::Approx(1.0));
  }
}

TEST_CASE("doped forms interpolate between Clifford and Haar") {
  Spectrum s = cb_spectrum({0.2, 0.9, 1.3, 0.55});
  for (double t : {0.4, 2.2, 7.0}) {
    FormFactors ff = sff_stabilizer(s, t);
    for (ProbeKind p : all_probes()) {
      double c = probe_value(p, ff, EnsembleSpec::clifford()), h = probe_value(p, ff, EnsembleSpec::haar());
      CHECK(probe_value(p, ff, EnsembleSpec::doped(0)) == doctest::Approx(c).epsilon(1e-10));
      CHECK(probe_value(p, ff, EnsembleSpec::doped(100000)) == doctest::Approx(h).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact and double assembly agree") {
  const long d = 16;
  FormFactors ff = sff_stabilizer(cb_spectrum({0.4, 1.0, 0.3, 0.8}), 1.7);
  for (ProbeKind p : all_probes())
    for (auto ens : {EnsembleSpec::haar(), EnsembleSpec::clifford(), EnsembleSpec::doped(3)}) {
      auto exact = probe_form(p, ens, d);
      auto dbl = build_probe_form<double>(p, ens, d, sqrt_dims(d));
      CAPTURE(std::string(to_string(p)));
      CAPTURE(ens.str());
      CHECK(exact->value(ff, ens.k) == doctest::Approx(dbl.value(ff)).epsilon(1e-12));
    }
}

TEST_CASE("probes reject unsupported inputs") {
  CHECK_THROWS(check_probe_dimension(ProbeKind::Loschmidt2, 2));
  CHECK_THROWS(check_probe_dimension(ProbeKind::Purity2Renyi, 12));
  FormFactors gde = gde_averages(16, 1.0);
  CHECK_NOTHROW(probe_value(ProbeKind::Otoc4, gde, EnsembleSpec::haar()));
  FormFactors raw = sff_explicit(Spectrum(16, 0.1), 1.0);
  CHECK_THROWS(probe_value(ProbeKind::Otoc4, raw, EnsembleSpec::clifford()));
  CHECK_THROWS(tripartite_bound(sff_stabilizer(Spectrum(8, 0.0), 1.0), EnsembleSpec::haar()));
}

TEST_CASE("Clifford probes depend on g3tilde, Haar probes do not") {
  FormFactors ff = gde_averages(64, 2.0);
  FormFactors shifted = ff;
  shifted.g3tilde += 5.0;
  CHECK(loschmidt2(ff, EnsembleSpec::haar()) == loschmidt2(shifted, EnsembleSpec::haar()));
  CHECK(loschmidt2(ff, EnsembleSpec::clifford()) != loschmidt2(shifted, EnsembleSpec::clifford()));
}

TEST_CASE("table forms reproduce the printed Haar and Clifford forms") {
  for (long d : {16L, 64L}) {
    std::vector<FormFactors> grid;
    for (double t : time_grid(0.1, 10.0, 12, false)) grid.push_back(gde_averages(d, t));
    for (ProbeKind p : all_probes())
      for (auto ens : {EnsembleSpec::haar(), EnsembleSpec::clifford()})
        CHECK(compare_with_printed(p, ens, d, grid, 1e-10).failures == 0);
  }
}
