"""
Time-domain solutions and growth-rate extraction.

evolve_series samples one continuous integration (scipy dense output via
t_eval), so restarting the integrator at any sample reproduces the same
values to tolerance. growth_rate fits the total occupation, which removes
the beating between the two Floquet modes from the envelope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pandas as pd
import structlog

from ptfloquet.core.errors import NotGrowing
from ptfloquet.core.model import ModelParams, TwoLevelState
from ptfloquet.dynamics.propagator import IntegratorConfig, integrate

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]

# smallest rise of log(total occupation) over the tail that counts as growth
GROWTH_FLOOR = 1e-6


@dataclass(frozen=True)
class TimeSeries:
    """
    Occupations |c_up|^2 and |c_down|^2 sampled at strictly increasing times.
    """

    times: FloatArray
    occ_up: FloatArray
    occ_down: FloatArray

    def __post_init__(self) -> None:
        if not (len(self.times) == len(self.occ_up) == len(self.occ_down)):
            raise ValueError("times and occupations must have the same length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if np.any(self.occ_up < 0) or np.any(self.occ_down < 0):
            raise ValueError("occupations must be non-negative")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def total(self) -> FloatArray:
        return self.occ_up + self.occ_down

    def to_frame(self) -> pd.DataFrame:
        """Columns t, occ_up, occ_down."""
        return pd.DataFrame({"t": self.times, "occ_up": self.occ_up, "occ_down": self.occ_down})


def evolve_series(
    p: ModelParams,
    psi0: TwoLevelState | None = None,
    t_max: float = 100.0,
    n_samples: int = 1001,
    cfg: IntegratorConfig | None = None,
) -> TimeSeries:
    """
    Propagate psi0 (default |up>) over [0, t_max] and sample n_samples
    equally spaced instants, both ends included.

    Raises:
        ValueError: t_max <= 0 or n_samples < 2
        StepSizeUnderflow: from the integrator
    """
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples}")
    psi0 = psi0 or TwoLevelState.up()
    cfg = cfg or IntegratorConfig.from_settings()

    times = np.linspace(0.0, t_max, n_samples)
    sol = integrate(p, psi0.as_array(), 0.0, t_max, cfg, t_eval=times)
    amplitudes = sol.y
    logger.debug("series_done", omega=p.omega, lam=p.lam, t_max=t_max, n_samples=n_samples)
    return TimeSeries(
        times=np.asarray(sol.t, dtype=np.float64),
        occ_up=np.abs(amplitudes[0]) ** 2,
        occ_down=np.abs(amplitudes[1]) ** 2,
    )


def growth_rate(series: TimeSeries, tail_fraction: float = 0.5) -> float:
    """
    Exponential growth rate of the amplitudes.

    Least-squares slope of log(occ_up + occ_down) over the last
    tail_fraction of the series, divided by 2 (occupations grow as
    exp(2 Im(eps) t)). The tail should span at least five drive periods.

    Raises:
        ValueError: tail_fraction outside (0, 1] or fewer than 2 tail samples
        NotGrowing: the fitted rise over the tail is not above the scatter
            of the fit (or below GROWTH_FLOOR)
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError(f"tail_fraction must be in (0, 1], got {tail_fraction}")
    start = int(np.floor((1.0 - tail_fraction) * len(series)))
    t = series.times[start:]
    total = series.total[start:]
    if len(t) < 2:
        raise ValueError("not enough samples in the tail to fit a slope")

    log_total = np.log(total)
    slope, intercept = np.polyfit(t, log_total, 1)
    # growth over the tail must stand out of the bounded oscillation around the fit
    rise = slope * (t[-1] - t[0])
    scatter = float(np.std(log_total - (slope * t + intercept)))
    if slope <= 0 or rise <= max(2.0 * scatter, GROWTH_FLOOR):
        raise NotGrowing(f"occupation is not growing (log-slope {slope:.3e}, rise {rise:.3e})")
    return float(slope) / 2.0


def max_transfer(series: TimeSeries) -> float:
    """Largest |c_down|^2 over the series (Rabi contrast for a start in |up>)."""
    return float(np.max(series.occ_down))
