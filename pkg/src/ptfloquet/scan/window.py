"""
PT-broken windows of the multi-photon resonances omega0 ~ (2n+1) omega.

The windows are exponentially narrow in n, so find_window works in stages:

1. locate: the discriminant 2 + Re tr U(T) is smooth in omega and negative
   exactly where the two quasienergies have met at omega/2 and split into a
   complex pair. Its minimum near the predicted line pins the window down
   even when the window is far narrower than any affordable grid.
2. coarse grid of Im(eps) around the minimum, sized from the rough width.
3. bisection of both edges where Im(eps) crosses the threshold.
4. golden-section maximisation of Im(eps) between the edges.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog
from scipy.optimize import minimize_scalar

from ptfloquet.core.constants import DEFAULT_OMEGA0, SCAN_DEFAULTS
from ptfloquet.core.errors import (
    NO_WINDOW,
    NoWindow,
    NumericalFailure,
    PTFloquetError,
    ResolutionTooCoarse,
)
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.dynamics.propagator import IntegratorConfig, max_im_eps, monodromy
from ptfloquet.perturbation.multiphoton import (
    ResonanceOrder,
    multiphoton_line_inverse,
    window_rough,
)
from ptfloquet.scan.parallel import default_threshold, parallel_map, rate_task

logger = structlog.get_logger(__name__)

# orders from which the tight integrator and threshold are the default
TIGHT_FROM_ORDER = 3
# outward extensions of the coarse grid before giving up on an edge
_MAX_EXTENSIONS = 12


@dataclass(frozen=True)
class ResonanceWindow:
    """
    Measured PT-broken window of one multi-photon resonance.

    Attributes:
        n: Resonance order
        omega_lo, omega_hi: Window edges in omega
        omega_res: omega of the largest Im(eps)
        max_im_eps: Peak growth rate
        lam: Drive strength of the measurement
    """

    n: ResonanceOrder
    omega_lo: float
    omega_hi: float
    omega_res: float
    max_im_eps: float
    lam: float

    def __post_init__(self) -> None:
        if not self.omega_lo < self.omega_hi:
            raise ValueError(f"window edges out of order: {self.omega_lo} >= {self.omega_hi}")
        if not self.omega_lo <= self.omega_res <= self.omega_hi:
            raise ValueError(f"omega_res={self.omega_res} outside the window")
        if not self.max_im_eps > 0:
            raise ValueError(f"max_im_eps must be positive, got {self.max_im_eps}")

    @property
    def width(self) -> float:
        return self.omega_hi - self.omega_lo

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n.n,
            "lambda": self.lam,
            "omega_lo": self.omega_lo,
            "omega_hi": self.omega_hi,
            "omega_res": self.omega_res,
            "width": self.width,
            "max_im_eps": self.max_im_eps,
        }


def window_discriminant(p: ModelParams, cfg: IntegratorConfig | None = None) -> float:
    """
    2 + Re tr U(T) with U normalised to unit determinant.

    Negative iff the multipliers are a real pair -e^(+-a), i.e. the
    quasienergies are omega/2 +- i a/T (PT-broken at the zone edge).
    """
    m = monodromy(p, cfg)
    scale = cmath.sqrt(m.det)
    tr = m.trace / scale if scale != 0 else m.trace
    return 2.0 + tr.real


def _golden_peak(
    base: ModelParams,
    cfg: IntegratorConfig,
    bracket: tuple[float, float, float],
    tol: float,
) -> tuple[float, float]:
    def negative_rate(omega: float) -> float:
        return -max_im_eps(base.with_(omega=omega), cfg)

    a, b, c = bracket
    if negative_rate(b) < min(negative_rate(a), negative_rate(c)):
        res = minimize_scalar(
            negative_rate, bracket=bracket, method="golden", options={"xtol": tol / b}
        )
    else:
        res = minimize_scalar(
            negative_rate, bounds=(a, c), method="bounded", options={"xatol": tol}
        )
    omega_res = float(np.clip(res.x, a, c))
    return omega_res, max_im_eps(base.with_(omega=omega_res), cfg)


def peak_growth(
    lam: float,
    bracket: tuple[float, float],
    tol: float = 1e-5,
    *,
    omega0: float = DEFAULT_OMEGA0,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
    cfg: IntegratorConfig | None = None,
    scan_points: int = 9,
) -> tuple[float, float]:
    """
    omega in bracket of the largest max Im(eps), and that rate.

    A short pre-scan picks the best sample, its neighbours form the
    three-point bracket for golden-section search.

    Example:
        lam = 0.2, bracket (0.8, 1.1) gives omega_res near 0.96
    """
    lo, hi = bracket
    if not 0 < lo < hi:
        raise ValueError(f"invalid bracket {bracket}")
    cfg = cfg or IntegratorConfig.from_settings()
    base = ModelParams(omega0=omega0, omega=lo, lam=lam, drive=DriveType.parse(drive))
    omegas = np.linspace(lo, hi, max(scan_points, 3))
    rates = [max_im_eps(base.with_(omega=float(w)), cfg) for w in omegas]
    best = int(np.argmax(rates))
    if rates[best] <= 0.0:
        return float(omegas[best]), 0.0
    if best == 0 or best == len(omegas) - 1:
        # peak at the edge of the bracket: no interior maximum to refine
        return float(omegas[best]), float(rates[best])
    three = (float(omegas[best - 1]), float(omegas[best]), float(omegas[best + 1]))
    omega_res, rate = _golden_peak(base, cfg, three, tol)
    if rate < rates[best]:
        return float(omegas[best]), float(rates[best])
    return omega_res, rate


def _locate(
    base: ModelParams, order: ResonanceOrder, cfg: IntegratorConfig, tol: float, threads: int
) -> tuple[float, float]:
    """Minimum of the discriminant near the predicted resonance line."""
    omega0 = base.omega0
    centre = multiphoton_line_inverse(order, base.lam, omega0)
    spacing = 2.0 * omega0 / (order.photons * (order.photons + 2))
    half = 0.25 * spacing
    omegas = np.linspace(centre - half, centre + half, SCAN_DEFAULTS["locate_points"])
    values = parallel_map(
        _discriminant_task, [(base.with_(omega=float(w)), cfg) for w in omegas], threads
    )
    i = int(np.argmin(values))
    a = float(omegas[max(i - 1, 0)])
    b = float(omegas[min(i + 1, len(omegas) - 1)])
    res = minimize_scalar(
        lambda w: window_discriminant(base.with_(omega=w), cfg),
        bounds=(a, b),
        method="bounded",
        options={"xatol": tol},
    )
    return float(res.x), float(res.fun)


def _discriminant_task(task: tuple[ModelParams, IntegratorConfig]) -> float:
    p, cfg = task
    return window_discriminant(p, cfg)


def _bisect_edge(
    base: ModelParams,
    cfg: IntegratorConfig,
    threshold: float,
    inside: float,
    outside: float,
    tol: float,
) -> float:
    while abs(outside - inside) > tol:
        mid = 0.5 * (inside + outside)
        if max_im_eps(base.with_(omega=mid), cfg) > threshold:
            inside = mid
        else:
            outside = mid
    return 0.5 * (inside + outside)


def _walk_to_edge(
    base: ModelParams,
    cfg: IntegratorConfig,
    threshold: float,
    start: float,
    step: float,
) -> tuple[float, float]:
    """From a broken point, step (signed) until a symmetric point is found."""
    inside = start
    for _ in range(_MAX_EXTENSIONS):
        candidate = inside + step
        if candidate <= 0:
            break
        if max_im_eps(base.with_(omega=candidate), cfg) <= threshold:
            return inside, candidate
        inside = candidate
    raise NumericalFailure(f"no window edge found stepping from omega={start:.9g} by {step:.3e}")


def find_window(
    n: int | ResonanceOrder,
    lam: float,
    tol: float | None = None,
    *,
    omega0: float = DEFAULT_OMEGA0,
    cfg: IntegratorConfig | None = None,
    threshold: float | None = None,
    n_coarse: int = SCAN_DEFAULTS["edge_points"],
    threads: int = 1,
) -> ResonanceWindow | NoWindow:
    """
    Measure the PT-broken window of the (2n+1)-photon resonance at fixed lambda.

    Args:
        n: Resonance order, >= 1
        lam: Drive strength, < omega0/e
        tol: Edge and peak resolution in omega (default min(1e-7 omega0, width/100))
        omega0: Level splitting
        cfg: Integrator config; tight tolerances by default from n = 3
        threshold: Classification threshold; 1e-9 omega0 by default from n = 3
        n_coarse: Points of the coarse edge grid
        threads: Workers for the grid stages

    Returns:
        ResonanceWindow, or NO_WINDOW if no broken point exists at this resolution

    Raises:
        ValueError: n < 1
        DomainError: lam >= omega0/e
        ResolutionTooCoarse: the rough width spans fewer than 3 coarse spacings
    """
    order = ResonanceOrder.of(n)
    if order.n < 1:
        raise ValueError(f"find_window needs n >= 1, got {order.n}")
    rough = window_rough(order, lam, omega0)
    if lam == 0:
        return NO_WINDOW

    tight = order.n >= TIGHT_FROM_ORDER
    if cfg is None:
        cfg = IntegratorConfig.tight() if tight else IntegratorConfig.from_settings()
    if threshold is None:
        threshold = default_threshold(omega0, tight=tight)
    if tol is None:
        tol = min(1e-7 * omega0, rough.width / 100.0)

    span = SCAN_DEFAULTS["edge_span_widths"] * rough.width
    spacing = 2.0 * span / (n_coarse - 1) if n_coarse > 1 else float("inf")
    if rough.width < 3.0 * spacing:
        raise ResolutionTooCoarse(
            f"rough width {rough.width:.3e} below 3 coarse spacings ({spacing:.3e});"
            f" use more than {n_coarse} points"
        )

    base = ModelParams(omega0=omega0, omega=order.resonance_omega(omega0), lam=lam)
    omega_min, s_min = _locate(base, order, cfg, tol, threads)
    if s_min >= 0:
        logger.info("window_not_found", n=order.n, lam=lam, discriminant=s_min)
        return NO_WINDOW
    rate_min = max_im_eps(base.with_(omega=omega_min), cfg)
    if rate_min <= threshold:
        logger.info("window_below_threshold", n=order.n, lam=lam, rate=rate_min)
        return NO_WINDOW

    omegas = np.linspace(omega_min - span, omega_min + span, n_coarse)
    rates = parallel_map(rate_task, [(base.with_(omega=float(w)), cfg) for w in omegas], threads)
    broken = np.asarray(rates) > threshold
    centre = int(np.argmin(np.abs(omegas - omega_min)))
    if not broken[centre]:
        # the grid point nearest the minimum sits just outside a very narrow window
        omegas[centre] = omega_min
        broken[centre] = True

    lo_idx = centre
    while lo_idx > 0 and broken[lo_idx - 1]:
        lo_idx -= 1
    hi_idx = centre
    while hi_idx < n_coarse - 1 and broken[hi_idx + 1]:
        hi_idx += 1

    if lo_idx == 0:
        lo_in, lo_out = _walk_to_edge(base, cfg, threshold, float(omegas[0]), -spacing)
    else:
        lo_in, lo_out = float(omegas[lo_idx]), float(omegas[lo_idx - 1])
    if hi_idx == n_coarse - 1:
        hi_in, hi_out = _walk_to_edge(base, cfg, threshold, float(omegas[-1]), spacing)
    else:
        hi_in, hi_out = float(omegas[hi_idx]), float(omegas[hi_idx + 1])

    omega_lo = _bisect_edge(base, cfg, threshold, lo_in, lo_out, tol)
    omega_hi = _bisect_edge(base, cfg, threshold, hi_in, hi_out, tol)

    peak_start = min(max(omega_min, omega_lo + tol), omega_hi - tol)
    if omega_lo < peak_start < omega_hi:
        omega_res, peak = _golden_peak(base, cfg, (omega_lo, peak_start, omega_hi), tol)
    else:
        omega_res, peak = peak_start, rate_min
    if peak < rate_min:
        omega_res, peak = omega_min, rate_min

    window = ResonanceWindow(
        n=order,
        omega_lo=omega_lo,
        omega_hi=omega_hi,
        omega_res=min(max(omega_res, omega_lo), omega_hi),
        max_im_eps=peak,
        lam=lam,
    )
    logger.info(
        "window_found",
        n=order.n,
        lam=lam,
        omega_res=window.omega_res,
        width=window.width,
        max_im_eps=window.max_im_eps,
        predicted_width=rough.width,
    )
    return window


def window_record(
    n: int,
    lam: float,
    *,
    omega0: float = DEFAULT_OMEGA0,
    n_coarse: int = SCAN_DEFAULTS["edge_points"],
    threads: int = 1,
) -> dict[str, Any]:
    """
    Measured window next to the rough prediction, as one flat-file record.

    Failures of the measurement become a status field ("no_window",
    "resolution_too_coarse", "failed") instead of an exception.
    """
    order = ResonanceOrder.of(n)
    rough = window_rough(order, lam, omega0)
    record: dict[str, Any] = {
        "n": order.n,
        "lambda": lam,
        "predicted": {
            "omega_res": multiphoton_line_inverse(order, lam, omega0),
            "width": rough.width,
            "max_im_eps": rough.max_im_eps,
            "omega_lo": rough.edges[0] if rough.edges else None,
            "omega_hi": rough.edges[1] if rough.edges else None,
        },
        "measured": None,
        "status": "ok",
    }
    try:
        found = find_window(order, lam, omega0=omega0, n_coarse=n_coarse, threads=threads)
    except ResolutionTooCoarse as exc:
        record["status"] = "resolution_too_coarse"
        record["detail"] = str(exc)
        return record
    except PTFloquetError as exc:
        logger.warning("window_failed", n=order.n, lam=lam, error=str(exc))
        record["status"] = "failed"
        record["detail"] = str(exc)
        return record
    if isinstance(found, NoWindow):
        record["status"] = "no_window"
        return record
    record["measured"] = found.to_dict()
    record["width_ratio"] = rough.width / found.width
    return record
