import json
import math
import os
import subprocess

import pytest

import poisson_bc as pbc


def test_rates_and_capacity():
    p = pbc.Params(1.0, 0.1, 1.0)
    assert pbc.mutual_info_rate(pbc.Receiver.first, 0.5, p) == pytest.approx(0.2437867185022708, rel=1e-12)
    assert pbc.mutual_info_rate(pbc.Receiver.second, 1.0, p) == pytest.approx(0.0, abs=1e-14)
    assert pbc.optimal_input(0.0) == pytest.approx(1 / math.e)
    assert pbc.capacity(pbc.Receiver.second, p) == pytest.approx(0.085223403565878668, rel=1e-12)


def test_breakpoints_and_classification():
    b = pbc.breakpoints(0.1, 1.0)
    assert b["alpha4"] <= b["alpha3"] <= b["alpha23"] <= b["alpha2"] <= b["alpha12"] <= b["alpha1"]
    assert abs(b["alpha23"] - 0.27) < 0.005
    assert pbc.classify(pbc.Params(1.2, 0.1, 1.0))["verdict"] == "degraded"
    c = pbc.classify(pbc.Params(0.25, 0.1, 1.0))
    assert c["verdict"] == "effectively-less-noisy" and c["stronger"] == 2
    assert pbc.classify(pbc.Params(0.28, 0.1, 1.0), resolve=True)["verdict"] == "stronger-condition-optimal"


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        pbc.Params(-1.0, 0.1, 1.0)
    with pytest.raises(ValueError):
        pbc.region(pbc.Params(0.3, 0.1, 1.0))


def test_region_and_sum_rates():
    p = pbc.Params(0.45, 0.1, 1.0)
    rows = pbc.region(p, 20, more_capable=True)
    assert rows[0][1] == pytest.approx(0.0, abs=1e-9)
    best = max(r1 + r2 for _, r1, r2 in rows)
    assert pbc.superposition_sum_rate(p) == pytest.approx(best, abs=1e-6)
    q = pbc.Params(0.34, 0.1, 1.0)
    s, m = pbc.superposition_sum_rate(q), pbc.marton_sum_rate(q, starts=16)
    assert s < m <= pbc.uv_sum_rate(q, starts=4) + 1e-9


def test_envelope_and_fractions():
    p = pbc.Params(0.34, 0.1, 1.0)
    for q in (0.1, 0.5, 0.9):
        env = pbc.envelope(pbc.Orientation.first_minus_second, p, q)
        raw = pbc.mutual_info_rate(pbc.Receiver.first, q, p) - pbc.mutual_info_rate(pbc.Receiver.second, q, p)
        assert env >= raw - 1e-14
    closed, degraded = pbc.fraction_closed_form(1.0, 1.0)
    assert degraded == 0.5
    est, err = pbc.fraction_monte_carlo(1.0, 1.0, 200000, 3)
    assert abs(est - closed) < 4 * err
    assert pbc.classify_skewed(0.5, 0.5) in {
        "effectively-less-noisy", "stronger-condition-optimal", "suboptimal", "inconclusive"}


@pytest.mark.skipif("PBC_EXE" not in os.environ, reason="command-line tool not built")
def test_cli_classify():
    out = subprocess.run([os.environ["PBC_EXE"], "classify", "--alpha", "0.28", "--s1", "0.1", "--s2", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["summary"] == "unresolved; stronger-condition: optimal"
    bad = subprocess.run([os.environ["PBC_EXE"], "classify", "--alpha", "0.28"], capture_output=True, text=True)
    assert bad.returncode == 2
