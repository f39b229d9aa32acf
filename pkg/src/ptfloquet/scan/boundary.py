"""
Numerical PT boundary at fixed omega: coarse grid in lambda, then bisection
of every sign change.

Near the multi-photon tongues the boundary is re-entrant, so every
transition found on the grid is refined and returned, not just the first.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
import structlog

from ptfloquet.core.constants import DEFAULT_OMEGA0, SCAN_DEFAULTS
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.dynamics.propagator import IntegratorConfig, max_im_eps
from ptfloquet.scan.parallel import default_threshold, parallel_map, rate_task

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class BoundaryPoint:
    """
    One PT transition at fixed omega.

    Attributes:
        omega: Drive frequency
        lambda_star: Bisection midpoint of the transition
        bracket_width: Final bracket (lambda_hi - lambda_lo), <= the requested tol
        breaks: True if PT symmetry breaks as lambda increases through lambda_star
    """

    omega: float
    lambda_star: float
    bracket_width: float
    breaks: bool = True

    def to_dict(self) -> dict[str, float | bool]:
        return asdict(self)


@dataclass(frozen=True)
class _BisectTask:
    p: ModelParams
    cfg: IntegratorConfig
    threshold: float
    lo: float
    hi: float
    lo_broken: bool
    tol: float


def _bisect_transition(task: _BisectTask) -> tuple[float, float]:
    """Shrink [lo, hi] around the label flip until it is narrower than tol."""
    lo, hi = task.lo, task.hi
    while hi - lo > task.tol:
        mid = 0.5 * (lo + hi)
        broken = max_im_eps(task.p.with_(lam=mid), task.cfg) > task.threshold
        if broken == task.lo_broken:
            lo = mid
        else:
            hi = mid
    return lo, hi


def boundary_in_lambda(
    omega: float,
    lambda_max: float,
    grid_points: int = SCAN_DEFAULTS["grid_points"],
    tol: float = SCAN_DEFAULTS["boundary_tol"],
    *,
    omega0: float = DEFAULT_OMEGA0,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
    cfg: IntegratorConfig | None = None,
    threshold: float | None = None,
    threads: int = 1,
) -> list[BoundaryPoint]:
    """
    Every PT transition in lambda on [0, lambda_max] at fixed omega.

    Args:
        omega: Drive frequency
        lambda_max: Upper end of the lambda scan
        grid_points: Coarse grid size, >= 50
        tol: Bisection tolerance on lambda (absolute)
        omega0: Level splitting
        drive: Drive type
        cfg: Integrator config (defaults from settings)
        threshold: Classification threshold (default settings.threshold * omega0)
        threads: Workers for the coarse grid and the refinements

    Returns:
        Transitions in increasing lambda; empty if the label never flips

    Example:
        omega = 1.2, lambda_max = 0.3 gives one transition near 0.105
    """
    if grid_points < SCAN_DEFAULTS["min_grid_points"]:
        raise ValueError(
            f"grid_points must be >= {SCAN_DEFAULTS['min_grid_points']}, got {grid_points}"
        )
    if not lambda_max > 0:
        raise ValueError(f"lambda_max must be positive, got {lambda_max}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    cfg = cfg or IntegratorConfig.from_settings()
    threshold = default_threshold(omega0) if threshold is None else threshold
    base = ModelParams(omega0=omega0, omega=omega, lam=0.0, drive=DriveType.parse(drive))

    lambdas = np.linspace(0.0, lambda_max, grid_points)
    rates = parallel_map(rate_task, [(base.with_(lam=float(lam)), cfg) for lam in lambdas], threads)
    broken = [rate > threshold for rate in rates]

    tasks = [
        _BisectTask(
            p=base,
            cfg=cfg,
            threshold=threshold,
            lo=float(lambdas[i]),
            hi=float(lambdas[i + 1]),
            lo_broken=broken[i],
            tol=tol,
        )
        for i in range(grid_points - 1)
        if broken[i] != broken[i + 1]
    ]
    brackets = parallel_map(_bisect_transition, tasks, threads)

    points = [
        BoundaryPoint(
            omega=omega,
            lambda_star=0.5 * (lo + hi),
            bracket_width=hi - lo,
            breaks=not task.lo_broken,
        )
        for task, (lo, hi) in zip(tasks, brackets)
    ]
    logger.debug("boundary_traced", omega=omega, transitions=len(points))
    return points
