import math

import pytest

import noma_sic as ns


def fig3_scenario(m1=2, m2=2):
    p1, p2 = ns.normalized_powers(-2.22, -3.98)
    return ns.Scenario(
        sigma1=math.sqrt(ns.db_to_linear(20.0)),
        sigma2=math.sqrt(ns.db_to_linear(7.96)),
        p1=p1,
        p2=p2,
        m1=m1,
        m2=m2,
    )


def test_q_functions():
    assert ns.q_exact(0.0) == pytest.approx(0.5)
    assert ns.q_chiani(0.0) == pytest.approx(1.0 / 3.0)


def test_order_probability():
    assert ns.order_probability(10.0, 2.5) == pytest.approx(0.941176, abs=1e-6)


def test_ordered_density_is_normalized():
    step = 0.01
    mass = sum(ns.ordered_gain_pdf((i + 0.5) * step, 1, 1, 10.0, 2.5) for i in range(6000)) * step
    assert mass == pytest.approx(1.0, abs=1e-4)


def test_theory_decreases_with_snr():
    sc = fig3_scenario()
    a = ns.theory_ber(sc, 10.0)
    b = ns.theory_ber(sc, 20.0)
    assert b[0] < a[0] and b[1] < a[1]
    fixed = ns.theory_fixed(sc, 20.0)
    assert all(0.0 < v < 0.5 for v in fixed)


def test_simulation_tracks_theory_at_low_snr():
    sc = fig3_scenario()
    (point,) = ns.simulate(sc, [0.0], trials=200000, seed=3)
    theory = ns.theory_ber(sc, 0.0)
    sim = point["ue"][1]["ber"]
    assert sim == pytest.approx(theory[1], rel=0.15)
    assert sum(point["bucket_trials"]) == 200000


def test_fit_recovers_published_coefficients():
    xs = ns.conditioned_real_part(2, 2, 10.0, 2.5, 200000, seed=5)
    terms, rms = ns.fit_mixture(xs, 1)
    a, _, c = terms[0]
    assert a == pytest.approx(0.2326, abs=0.01)
    assert abs(c) == pytest.approx(2.426, abs=0.05)
    assert rms < 0.01


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        ns.Scenario(sigma1=1.0, sigma2=1.0, p1=0.2, p2=0.8)
    with pytest.raises(ns.ConfigError):
        ns.run_config("unknown_key = 1\n", "/tmp")


def test_run_config(tmp_path):
    paths = ns.run_config("name = smoke\ngrid = 0,10\ntrials = 2000\n", tmp_path)
    names = {p.name for p in paths}
    assert "smoke.csv" in names
    header = (tmp_path / "smoke.csv").read_text().splitlines()[0]
    assert header == "param,ue,mode,source,value,ci95,trials"
