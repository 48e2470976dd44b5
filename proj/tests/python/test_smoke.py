import math

import numpy as np
import pytest

import apdsplit


def test_prox_l1_soft_threshold():
    out = apdsplit.prox_l1(np.array([3.0, -0.5, -2.0]), 1.0)
    np.testing.assert_allclose(out, [2.0, 0.0, -1.0])


def test_prox_elastic_net_and_box():
    z = np.array([2.0, -0.1])
    np.testing.assert_allclose(apdsplit.prox_elastic_net(z, 1.0, 1.0, 1.0), [0.5, 0.0])
    np.testing.assert_allclose(apdsplit.project_box(z, np.array([-1.0, 0.0]), np.array([1.0, 1.0])), [1.0, 0.0])


def test_schedule_recursion():
    s = apdsplit.schedule("f1-semib", norm_A=1.0, norm_B=2.0, mu_f=0.5, iters=50)
    theta, gamma, alpha = s["theta"], s["gamma"], s["alpha"]
    assert len(theta) == 51 and len(alpha) == 50
    assert theta[0] == 1.0
    for k, a in enumerate(alpha):
        assert theta[k + 1] == pytest.approx(theta[k] / (1 + a), rel=1e-15)
        assert gamma[k + 1] >= theta[k + 1] * gamma[0] - 1e-15
    assert all(b < a for a, b in zip(theta, theta[1:]))


def test_unknown_scheme():
    with pytest.raises(ValueError):
        apdsplit.schedule("nope", 1.0, 1.0)


def test_benchmark_roundtrip():
    summary, traces = apdsplit.benchmark(m=20, n=40, iters=30, reference_iters=200, methods=["f1-semib", "ladmm"])
    assert set(traces) == {"f1-semib", "ladmm"}
    assert len(traces["f1-semib"]) == 31
    assert summary["config"]["m"] == 20
    first = summary["methods"]["ladmm"]["checkpoints"][0]
    assert first["k"] == 0 and first["feas_rel"] == 1.0
    again, _ = apdsplit.benchmark(m=20, n=40, iters=30, reference_iters=200, methods=["f1-semib", "ladmm"])
    assert again == summary


def test_benchmark_rejects_unknown_key():
    with pytest.raises(ValueError):
        apdsplit.benchmark(bogus=1)


def test_flow_decay():
    rows = apdsplit.flow(T=2.0, step=1e-2, every=10)
    assert rows[0]["t"] == 0.0
    assert rows[-1]["theta"] == pytest.approx(math.exp(-2.0), rel=1e-8)
    e0 = rows[0]["E"]
    for r in rows:
        assert math.exp(r["t"]) * r["E"] <= e0 * (1 + 1e-6)
