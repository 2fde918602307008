"""Homothety centers, Monge hyperplanes and edge-ratio checks.

Scenarios and reports are plain dicts in the JSON scenario format used by
the ``monge`` command-line tool.
"""

import json

from ._monge import GeometryError as _NativeGeometryError
from ._monge import ScenarioError
from ._monge import scenario_seed, splitmix64
from ._monge import sweep as _sweep

from . import _monge

__all__ = [
    "GeometryError",
    "ScenarioError",
    "figure",
    "generate",
    "scenario_seed",
    "splitmix64",
    "sweep",
    "verify",
]


class GeometryError(ValueError):
    """A geometric failure; ``kind`` names it, ``indices`` are 1-based."""

    def __init__(self, doc):
        super().__init__(doc.get("message", ""))
        self.kind = doc.get("error")
        self.indices = doc.get("indices", [])
        self.span_dimension = doc.get("span_dimension")


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _NativeGeometryError as e:
        raise GeometryError(json.loads(str(e))) from None


def _text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def verify(scenario, tolerance=1e-9, exact=False):
    """Report dict for a scenario (dict or JSON text)."""
    return json.loads(_call(_monge.verify_json, _text(scenario), tolerance, exact))


def generate(geometry="euclidean", dim=2, kind="edge_points", count=1, seed=0,
             ratio_gap=1.5, perturb=None, rational=False):
    docs = _call(_monge.generate_json, geometry, dim, kind, count, seed,
                 ratio_gap, perturb, rational)
    return [json.loads(d) for d in docs]


def sweep(geometry="euclidean", dims="2..4", per_cell=100, seed=0,
          tolerance=1e-9, perturb=1e-2, ratio_gap=1.5):
    return _call(_sweep, geometry, dims, per_cell, seed, tolerance, perturb, ratio_gap)


def figure(scenario):
    """SVG text for a planar Euclidean shapes scenario."""
    return _call(_monge.figure_svg, _text(scenario))
