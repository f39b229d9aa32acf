"""
Dense phase-diagram grids and Im(eps) curves from the monodromy oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pandas as pd
import structlog

from ptfloquet.core.constants import DEFAULT_OMEGA0
from ptfloquet.core.model import DriveType, ModelParams, PhaseLabel
from ptfloquet.dynamics.propagator import IntegratorConfig
from ptfloquet.scan.parallel import default_threshold, parallel_map, rate_task

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def _axis(bounds: tuple[float, float], count: int, name: str, allow_zero: bool) -> FloatArray:
    lo, hi = bounds
    if count < 2:
        raise ValueError(f"{name} needs at least 2 points, got {count}")
    if not hi > lo:
        raise ValueError(f"{name} range is empty: {lo}..{hi}")
    if lo < 0 or (lo == 0 and not allow_zero):
        raise ValueError(f"{name} range must be positive, got {lo}..{hi}")
    return np.linspace(lo, hi, count)


@dataclass(frozen=True)
class GridResult:
    """
    max Im(eps) on an (omega, lambda) grid.

    im_eps[i, j] belongs to (omegas[i], lambdas[j]); labels are derived from
    im_eps and threshold, never stored separately.
    """

    omegas: FloatArray
    lambdas: FloatArray
    im_eps: FloatArray
    threshold: float

    @property
    def broken(self) -> npt.NDArray[np.bool_]:
        return self.im_eps > self.threshold

    @property
    def labels(self) -> npt.NDArray[np.object_]:
        return np.where(self.broken, PhaseLabel.BROKEN.value, PhaseLabel.SYMMETRIC.value)

    def to_frame(self) -> pd.DataFrame:
        """Rows omega-major (lambda varies fastest): omega, lambda, im_eps, phase."""
        om, la = np.meshgrid(self.omegas, self.lambdas, indexing="ij")
        return pd.DataFrame(
            {
                "omega": om.ravel(),
                "lambda": la.ravel(),
                "im_eps": self.im_eps.ravel(),
                "phase": self.labels.ravel(),
            }
        )


@dataclass(frozen=True)
class ImEpsCurve:
    """max Im(eps) sampled along omega at fixed lambda."""

    lam: float
    omegas: FloatArray
    im_eps: FloatArray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"omega": self.omegas, "im_eps": self.im_eps})


def phase_grid(
    omega_range: tuple[float, float],
    lambda_range: tuple[float, float],
    n_omega: int,
    n_lambda: int,
    *,
    omega0: float = DEFAULT_OMEGA0,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
    cfg: IntegratorConfig | None = None,
    threshold: float | None = None,
    threads: int = 1,
) -> GridResult:
    """
    Evaluate max Im(eps) at every grid point (both ends of each range included).

    Raises:
        ValueError: a range is empty or not positive, or a size is below 2
    """
    omegas = _axis(omega_range, n_omega, "omega", allow_zero=False)
    lambdas = _axis(lambda_range, n_lambda, "lambda", allow_zero=True)
    cfg = cfg or IntegratorConfig.from_settings()
    threshold = default_threshold(omega0) if threshold is None else threshold
    base = ModelParams(omega0=omega0, omega=float(omegas[0]), drive=DriveType.parse(drive))

    tasks = [
        (base.with_(omega=float(w), lam=float(lam)), cfg) for w in omegas for lam in lambdas
    ]
    rates = parallel_map(rate_task, tasks, threads)
    im_eps = np.asarray(rates, dtype=np.float64).reshape(n_omega, n_lambda)
    logger.info(
        "phase_grid_done",
        points=im_eps.size,
        broken=int(np.count_nonzero(im_eps > threshold)),
    )
    return GridResult(omegas=omegas, lambdas=lambdas, im_eps=im_eps, threshold=threshold)


def im_eps_curve(
    lam: float,
    omega_range: tuple[float, float],
    n_points: int,
    *,
    omega0: float = DEFAULT_OMEGA0,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
    cfg: IntegratorConfig | None = None,
    threads: int = 1,
) -> ImEpsCurve:
    """max Im(eps) versus omega at fixed lambda; non-negative by construction."""
    omegas = _axis(omega_range, n_points, "omega", allow_zero=False)
    cfg = cfg or IntegratorConfig.from_settings()
    base = ModelParams(omega0=omega0, omega=float(omegas[0]), lam=lam, drive=DriveType.parse(drive))
    rates = parallel_map(rate_task, [(base.with_(omega=float(w)), cfg) for w in omegas], threads)
    return ImEpsCurve(lam=lam, omegas=omegas, im_eps=np.asarray(rates, dtype=np.float64))
