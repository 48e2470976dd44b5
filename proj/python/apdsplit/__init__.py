"""Accelerated primal-dual splitting methods for separable convex problems."""

import csv
import io
import json

from ._apd import (
    FlowBlowUp,
    available_methods,
    project_box,
    prox_elastic_net,
    prox_hinge_sum,
    prox_l1,
    prox_shifted_l1,
    schedule,
    schemes,
)
from . import _apd

__all__ = [
    "FlowBlowUp",
    "available_methods",
    "benchmark",
    "default_config",
    "flow",
    "project_box",
    "prox_elastic_net",
    "prox_hinge_sum",
    "prox_l1",
    "prox_shifted_l1",
    "schedule",
    "schemes",
]


def _rows(text):
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: (float(v) if v != "" else None) for k, v in row.items()})
    return out


def default_config():
    return json.loads(_apd.default_config_json())


def benchmark(config=None, **overrides):
    """Run the benchmark in memory.

    Returns (summary, traces); traces maps each successful method to a list
    of row dicts with the CSV columns.
    """
    cfg = dict(config or {})
    cfg.update(overrides)
    summary, traces = _apd.benchmark_json(json.dumps(cfg))
    return json.loads(summary), {m: _rows(t) for m, t in traces.items()}


def flow(**kwargs):
    """Integrate the continuous flow on a random smooth quadratic; returns rows."""
    return _rows(_apd.flow_csv(**kwargs))
