import json
import math
from pathlib import Path

import numpy as np
import pytest

import cnls

CONFIGS = Path(__file__).resolve().parents[2] / "configs"

TINY = {
    "domain": [-20, 80],
    "n": 1024,
    "bc": "periodic",
    "initial": {"preset": "single_soliton"},
    "stepper": "krogstad-p22",
    "k": "1/40",
    "T": 0.5,
    "energy_mu": 2,
    "exact_solution": True,
}


def test_version():
    assert cnls.__version__ == "0.1.0"


def test_axis_matches_dirichlet_listing():
    points, eig = cnls.axis("dirichlet", 0.0, 1.0, 3)
    np.testing.assert_allclose(points, [0.25, 0.5, 0.75])
    np.testing.assert_allclose(eig, np.pi**2 * np.array([1, 4, 9]))


@pytest.mark.parametrize("bc", ["periodic", "dirichlet", "neumann"])
def test_transform_round_trip(bc):
    rng = np.random.default_rng(0)
    f = rng.normal(size=(16, 12)) + 1j * rng.normal(size=(16, 12))
    back = cnls.inverse(cnls.forward(f, bc), bc)
    assert back.shape == f.shape
    np.testing.assert_allclose(back, f, atol=1e-12)


def test_periodic_forward_is_numpy_fft():
    rng = np.random.default_rng(1)
    f = rng.normal(size=32) + 1j * rng.normal(size=32)
    np.testing.assert_allclose(cnls.forward(f, "periodic"), np.fft.fft(f), atol=1e-12)


def test_pade_and_amplification():
    assert abs(abs(cnls.r22(3.7j)) - 1) < 1e-15
    x = -1 + 1j
    assert abs(cnls.amplification(x, 0) - (1 + x + x**2 / 2 + x**3 / 6 + x**4 / 24)) < 1e-13
    assert abs(cnls.amplification(x, -2) - cnls.amplification_closed_form(x, -2)) < 1e-12
    grid, area = cnls.stability_region(-1.0)
    assert grid.shape == (64, 64)
    assert area > 0


def test_convergence_order():
    assert cnls.convergence_order([16.0, 1.0]) == [4.0]


def test_simulate_conserves_mass_and_tracks_soliton():
    out = cnls.run(TINY)
    assert out["steps"] == 20
    assert out["divergence_step"] is None
    mass = out["mass"]
    assert mass.shape == (21, 2)
    assert np.max(np.abs(mass - mass[0])) < 1e-7
    assert abs(mass[0, 0] - 6 * math.sqrt(2) / 5) < 1e-6
    assert out["err"][-1] < 1e-5
    assert out["fields"][0].shape == (1024,)


def test_converge_time_order():
    rows = cnls.converge_time(json.dumps(TINY), [0.05, 0.025])
    assert rows[0]["order"] is None
    assert 3.5 < rows[1]["order"] < 4.6


def test_preset_config_parses():
    cfg = json.loads((CONFIGS / "example2.json").read_text())
    out = cnls.run(cfg, T=0.05, k=0.01, diagnostics_every=1)
    np.testing.assert_allclose(out["mass"][0], [4.8, 4.0], atol=1e-6)


def test_config_error_is_value_error():
    with pytest.raises(ValueError):
        cnls.run(TINY, n=255)
