import math

import numpy as np
import pytest

import normsol


def test_grid_and_gaussian_mass():
    grid = normsol.Grid(3, 20.0, 16000)
    u = np.exp(-0.5 * grid.nodes**2)
    u[-1] = 0.0
    assert normsol.mass(grid, u) == pytest.approx(math.pi**1.5, rel=1e-6)
    assert grid.weights.sum() == pytest.approx(4.0 / 3.0 * math.pi * 20.0**3, rel=1e-12)


def test_model_values():
    m = normsol.Model.combined_power(2.0, 4.0, 3)
    assert m.f(0.5) == pytest.approx(2.0 * 0.5**3 + 0.5**5)
    assert m.F(0.5) == pytest.approx(0.5 * 0.5**4 + 0.5**6 / 6.0)
    with pytest.raises(ValueError):
        normsol.Model.exp_critical(1.0, 3.0)


def test_solve_three_dimensions():
    rep = normsol.solve({"mu": 50})
    assert rep["converged"]
    assert rep["lambda"] < 0.0
    assert rep["energy"]["mass"] == pytest.approx(1.0, abs=1e-12)
    assert abs(rep["energy"]["Q"]) <= 1e-6 * rep["energy"]["gradSq"]
    assert rep["lambdaClosedFormError"] < 1e-4
    assert len(rep["r"]) == len(rep["u"]) == 4000


def test_energy_of_returned_profile():
    rep = normsol.solve({"dimension": 2, "a": 0.5, "mu": 100.0})
    grid = normsol.Grid(2, rep["R"], 4000, 1.001)
    model = normsol.Model.exp_critical(100.0, 6.0)
    assert np.allclose(grid.nodes, rep["r"], rtol=1e-12)
    assert normsol.energy(grid, rep["u"], model) == pytest.approx(rep["gamma"], rel=1e-12)


def test_sweep_slope():
    res = normsol.sweep({"mu_min": 100, "mu_max": 1e4, "mu_count": 5})
    assert res["fittedSlope"] == pytest.approx(-2.0, abs=0.15)
    assert res["muStar"] == pytest.approx(100.0)
    assert all(r["converged"] for r in res["records"])


def test_config_errors():
    with pytest.raises(normsol.ConfigError, match="bogus"):
        normsol.solve({"bogus": 1})
    with pytest.raises(normsol.ConfigError, match=r"\(0, 1\)"):
        normsol.solve({"dimension": 2, "a": 1.0})
    assert "mu" in dict(normsol.config_keys())


def test_sobolev_constant():
    grid = normsol.Grid(3, 400.0, 4000, 1.003)
    s, eps = normsol.sobolev_constant(grid)
    assert s == pytest.approx(3.0 * (math.pi / 2.0) ** (4.0 / 3.0), rel=1e-4)
    assert eps > 0.0
