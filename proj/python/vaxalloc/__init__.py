"""Vaccinator allocation planner.

Every function taking a district accepts a path to a district JSON file or
the JSON text itself, and returns the same documents the `vaxalloc` tool
prints, decoded into Python objects.
"""

import json
import os

from . import _core
from ._core import VaxallocError

__all__ = ["VaxallocError", "validate", "synth", "need", "times", "solve", "sweep", "compare", "percent_saving"]


def _source(district):
    if isinstance(district, dict):
        return json.dumps(district)
    return os.fspath(district)


def validate(district):
    return json.loads(_core.validate(_source(district)))


def synth(seed=1, localities=3, union_councils=25, centres=16):
    return json.loads(_core.synth(seed, localities, union_councils, centres))


def need(district):
    return json.loads(_core.need(_source(district)))


def times(district, metalled_kmh=30.0, unmetalled_kmh=10.0):
    return json.loads(_core.times(_source(district), metalled_kmh, unmetalled_kmh))


def solve(district, **params):
    return json.loads(_core.solve(_source(district), **params))


def sweep(district, epsilons=(0.03, 0.05, 0.10, 0.15, 0.20, 0.25), **params):
    return json.loads(_core.sweep(_source(district), list(epsilons), **params))


def compare(district, **params):
    return json.loads(_core.compare(_source(district), **params))


def percent_saving(reference_hours, candidate_hours):
    """Returns (raw, display), display rounded half-up to one decimal."""
    return _core.percent_saving(reference_hours, candidate_hours)
