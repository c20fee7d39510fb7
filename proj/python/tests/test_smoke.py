import math
from fractions import Fraction

import pytest

import isotwirl


def test_form_factors_at_zero():
    ff = isotwirl.sff_stabilizer(isotwirl.cb_spectrum([0.3, 0.8, 1.1]), 0.0)
    assert ff.d == 8
    assert ff.g2 == pytest.approx(64.0)
    assert ff.g3tilde == pytest.approx(64.0)


def test_probe_limits():
    ff = isotwirl.sff_stabilizer(isotwirl.cb_spectrum([0.2, 0.9, 1.3, 0.55]), 2.2)
    for name in isotwirl.probe_names():
        clifford = isotwirl.probe(name, ff, "clifford")
        haar = isotwirl.probe(name, ff, "haar")
        assert isotwirl.probe(name, ff, "doped:0") == pytest.approx(clifford, rel=1e-10)
        assert isotwirl.probe(name, ff, "doped:1000000") == pytest.approx(haar, rel=1e-10)


def test_bad_ensemble():
    ff = isotwirl.gde_averages(16, 1.0)
    with pytest.raises(ValueError):
        isotwirl.probe("otoc4", ff, "doped:-2")


def test_weingarten_routes_agree():
    a = isotwirl.weingarten("minus", 16)
    b = isotwirl.weingarten("minus", 16, route="characters")
    assert a == b
    w = isotwirl.weingarten("plain_s2", 3)
    assert sorted(Fraction(v) for v in w.values()) == [Fraction(-1, 24), Fraction(1, 8)]


def test_xi_contracts():
    for x in isotwirl.xi_closed_form(64):
        assert abs(x) < 1


def test_oracle_matches_closed_form():
    spec = isotwirl.cb_spectrum([0.4, 0.9])
    t = 1.3
    mean, err = isotwirl.mc_twirl("loschmidt2", spec, t, "clifford", samples=20000, seed=5)
    cf = isotwirl.probe("loschmidt2", isotwirl.sff_stabilizer(spec, t), "clifford")
    assert abs(mean - cf) < 5 * err


def test_acceptance_criterion():
    ok, line, details = isotwirl.run_criterion(3)
    assert ok and line.startswith("CRITERION 3 PASS")
    assert math.isfinite(len(details))
