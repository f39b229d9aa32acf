"""
Time-domain dynamics: Schrodinger propagation, the monodromy matrix and
sampled trajectories.
"""

from ptfloquet.dynamics.propagator import (
    IntegratorConfig,
    MonodromyResult,
    classify,
    integrate,
    max_im_eps,
    monodromy,
    propagate,
    quasienergies,
)
from ptfloquet.dynamics.trajectory import TimeSeries, evolve_series, growth_rate, max_transfer

__all__ = [
    "IntegratorConfig",
    "MonodromyResult",
    "classify",
    "integrate",
    "max_im_eps",
    "monodromy",
    "propagate",
    "quasienergies",
    "TimeSeries",
    "evolve_series",
    "growth_rate",
    "max_transfer",
]
