"""
Numerical phase-boundary tracing, resonance windows and phase-diagram grids.
"""

from ptfloquet.scan.boundary import BoundaryPoint, boundary_in_lambda
from ptfloquet.scan.grid import GridResult, ImEpsCurve, im_eps_curve, phase_grid
from ptfloquet.scan.parallel import default_threshold, parallel_map
from ptfloquet.scan.window import (
    ResonanceWindow,
    find_window,
    peak_growth,
    window_discriminant,
    window_record,
)

__all__ = [
    "BoundaryPoint",
    "boundary_in_lambda",
    "GridResult",
    "ImEpsCurve",
    "im_eps_curve",
    "phase_grid",
    "default_threshold",
    "parallel_map",
    "ResonanceWindow",
    "find_window",
    "peak_growth",
    "window_discriminant",
    "window_record",
]
