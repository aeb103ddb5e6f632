"""Spatial resilience scoring for EV charging networks.

Thin wrapper over the compiled core. The useful surface:

- ``make_fixture`` / ``validate`` / ``score`` / ``report``: the pipeline,
  driven by a config file exactly like the CLI.
- ``to_bng`` / ``to_wgs84``: the British National Grid projection pair.
- ``percentile``, ``rseri_score``, ``knn``: the core computations, handy for
  quick checks from Python.
"""

from ._core import (
    knn,
    make_fixture,
    percentile,
    report,
    rseri_score,
    score,
    to_bng,
    to_wgs84,
    validate,
)

__all__ = [
    "knn",
    "make_fixture",
    "percentile",
    "report",
    "rseri_score",
    "score",
    "to_bng",
    "to_wgs84",
    "validate",
]

__version__ = "0.1.0"
