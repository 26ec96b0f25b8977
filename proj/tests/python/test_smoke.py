"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import cfluid


def test_grid_and_fields():
    g = cfluid.Grid1D(64, 16.0)
    assert g.n == 64
    assert g.spacing == pytest.approx(0.25)
    x = g.x()
    R = np.exp(-(x**2))
    Theta = 0.3 * np.exp(-((x - 1.0) ** 2))
    s = cfluid.FieldPair(g, R, Theta, 0.0)
    assert s.R.shape == (64,)
    with pytest.raises(cfluid.CfluidError):
        cfluid.FieldPair(g, -R, Theta, 0.0)  # negative density rejected


def test_free_evolution_conserves_charges():
    s = cfluid.standard_datum(n=256, L=40.0)
    traj = cfluid.evolve(s, cfluid.Potential.free(), dt=1e-3, t_final=0.1,
                         stride=20)
    rows = cfluid.conservation_report(traj, cfluid.Potential.free())
    assert len(rows) == 10
    for row in rows:
        assert row["max_drift"] < 1e-8


def test_bracket_identity_h_b():
    s = cfluid.standard_datum()
    pot = cfluid.Potential.free()
    lhs = cfluid.bracket("H", "B", s, pot)
    P = cfluid.charge("P", s, pot)
    assert lhs == pytest.approx(-P, rel=1e-9)


def test_structure_table_and_dictionary():
    table = cfluid.structure_table()
    assert table["closed"] is True
    assert table["sigma"] == 1
    assert table["sigma_unique"] is True
    assert len(table["entries"]) == 45
    assert cfluid.dictionary_exact() is True
    assert cfluid.conformal_factor("C1") == "(-2)*s"


def test_group_action_examples():
    out = cfluid.group_action("C1", 1.0, (1.0, 0.0, 1.0))
    assert out == pytest.approx((0.5, 0.25, 0.5), abs=1e-13)
    out = cfluid.group_action("G", 0.5, (1.0, 0.0, 2.0))
    assert out == pytest.approx((0.0, 0.25, 2.0), abs=1e-13)
    assert cfluid.schrodinger_condition("B") is True
    assert cfluid.schrodinger_condition("G") is False


def test_antiboost_slope_law():
    beta, alpha = 0.1, 0.4
    out = cfluid.transform_plane_wave("G", alpha, beta=beta, R0=1.0,
                                      query_t=0.3)
    beta_p = beta / (1.0 - 0.5 * alpha * beta)
    expected = beta_p * out["x"] - 0.5 * beta_p**2 * 0.3
    assert np.max(np.abs(out["theta_star"] - expected)) < 1e-12
    assert np.max(np.abs(out["R_star"] - (1.0 - 0.5 * alpha * beta) ** 2)) < 1e-12


def test_nls_plane_wave():
    g = cfluid.Grid1D(128, 16.0)
    k = 2.0 * math.pi * 2 / g.length
    psi0 = np.exp(1j * k * g.x())
    out = cfluid.evolve_nls(g, psi0, dt=1e-3, t_final=0.1, stride=100)
    expected = np.exp(1j * (k * g.x() - 0.5 * k * k * 0.1))
    assert np.max(np.abs(out["psi"][-1] - expected)) < 1e-11
    hydro = cfluid.hydro_decompose(g, psi0)
    assert np.max(np.abs(hydro.R - 1.0)) < 1e-14
