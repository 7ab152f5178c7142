import math

import numpy as np
import pytest

import cavq


@pytest.fixture
def params():
    return cavq.SystemParams.from_ghz_with_coupling(6.5, 149.0, 0.634233, 40.0, 4e6, 5e5)


def test_derived_quantities(params):
    d = cavq.derive(params)
    expected = 2 * math.pi * 1e9 * (149.0 * (2 * 0.634233 - 1) - 40.0)
    assert d["detuning"] == pytest.approx(expected, rel=1e-9)
    assert d["chi"] == pytest.approx(16e12 / expected, rel=1e-9)
    assert cavq.damping_factor(1e-7, params) == pytest.approx(0.9752, abs=1e-4)


def test_prepare_outcomes(params):
    tau2 = cavq.tau2_for_phi(math.pi, params)
    g = cavq.prepare(4.0, params, tau2, outcome="g")
    e = cavq.prepare(4.0, params, tau2, outcome="e")
    assert g["probability_ground"] + g["probability_excited"] == pytest.approx(1.0, abs=1e-12)
    assert g["cat"].sign == "-" and e["cat"].sign == "+"
    field = np.asarray(g["field"])
    assert np.linalg.norm(field) == pytest.approx(1.0, abs=1e-10)


def test_wigner_closed_matches_numeric():
    cat = cavq.CatSpec(2.0, math.pi, 0.3, "+")
    box = [-8.0, 8.0, -8.0, 8.0]
    closed = cavq.cat_wigner(cat, 0.9, box, 65, 65)
    numeric = cavq.numeric_wigner(cat, 0.9, 40, box, 65, 65)
    assert np.max(np.abs(closed["w"] - numeric["w"])) < 1e-8
    dx = closed["x"][1] - closed["x"][0]
    assert closed["w"].sum() * dx * dx == pytest.approx(1.0, abs=1e-6)


def test_readout_and_fit(params):
    cat = cavq.CatSpec(4.0, math.pi, 0.996, "-")
    taus = list(np.linspace(0.0, 1e-6, 20))
    t, pg, pe = cavq.readout_curve(params, cat, taus, omega_minus_tau4_mod=0.996)
    assert np.allclose(np.add(pg, pe), 1.0, atol=1e-12)
    fit = cavq.fit_q(params, cat, t, pg, omega_minus_tau4_mod=0.996)
    assert fit["q_hat"] == pytest.approx(5e5, rel=1e-3)


def test_fit_too_few_samples(params):
    cat = cavq.CatSpec(4.0, math.pi, 0.996, "-")
    with pytest.raises(cavq.DomainError):
        cavq.fit_q(params, cat, [0.0, 1e-7], [0.3, 0.5])


def test_dispersive_and_validation():
    r = cavq.dispersive_vs_full(0.05, 1.0, 1.0, math.pi / 0.05**2)
    assert r["fidelity"] >= 0.999
    ok, checks = cavq.validate()
    assert ok and all(c["passed"] for c in checks)
    bad, _ = cavq.validate(0.01)
    assert not bad
