import json
import math
from pathlib import Path

import pytest

import qgrav

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def scenario_one():
    return qgrav.load_scenarios(str(CONFIGS / "scenario1.toml"))["scenario1"]


def test_derive_matches_frozen_values():
    p = qgrav.derive(scenario_one())
    assert p.gamma_lever == pytest.approx(3182.8418066966833, rel=1e-12)
    assert p.n_th == pytest.approx(4166.8238446623607, rel=1e-12)
    assert p.Gamma_2 == pytest.approx(1958.75227842055, rel=1e-12)


def test_revival_identity():
    p = qgrav.derive(scenario_one())
    for theta in (0.3, math.pi / 2, 2.8):
        p0 = math.cos(theta / 2) ** 2
        F = qgrav.qfi_closed_form(theta, 0j, 2.0, p)
        assert F == pytest.approx(qgrav.qfi_revival(p.gamma_lever, p.k, p0), rel=1e-12)


def test_oracle_agrees_with_closed_form():
    p = qgrav.derive(scenario_one())
    p.G_bar = 0.5
    exact = qgrav.qfi_closed_form(1.1, 0.4 + 0.2j, 1.3, p)
    assert qgrav.oracle_qfi(1.1, 0.4 + 0.2j, 1.3, p) == pytest.approx(exact, rel=1e-6)


def test_scenario_report():
    (report,) = qgrav.evaluate_config(str(CONFIGS / "scenario1.toml"))
    assert report["n_star"] == 52
    assert report["realistic"]["eta_g"] == pytest.approx(6.5e-8, rel=0.03)
    assert report["ideal"]["F_Q"] == pytest.approx(1.7e11, rel=0.03)
    assert report["cfi_as_reported_exceeds_qfi"]


def test_linear_entropy_and_visibility():
    p = qgrav.derive(scenario_one())
    p.k, p.G_bar = 0.2, 0.0
    assert qgrav.linear_entropy(math.pi / 2, 0j, 1.0, p) == pytest.approx(0.23635378797847572, rel=1e-13)
    assert qgrav.linear_entropy(math.pi / 2, 0j, 2.0, p) == 0.0
    assert qgrav.visibility(2.0, p, ideal=True) == 1.0


def test_errors_are_python_exceptions():
    d = scenario_one()
    d.T1 = -1.0
    with pytest.raises(ValueError, match="T1"):
        qgrav.derive(d)
    with pytest.raises(ValueError):
        qgrav.crb_delta_g(0.0)
    with pytest.raises(OSError):
        qgrav.load_scenarios("/nonexistent.toml")


def test_cli_in_process():
    code, out, err = qgrav.run_cli(["--config", str(CONFIGS / "scenario2.toml"), "--format", "json", "scenario"])
    assert code == 0, err
    assert json.loads(out)["scenario2"]["n_star"] == 10
    code, _, err = qgrav.run_cli(["qfi"])
    assert code == 2 and err
