"""
Time integration of the two-level Schrodinger equation and the one-period
monodromy matrix.

This is the numerically exact quasienergy oracle: every closed-form boundary
in the package is checked against it.

    i dpsi/dt = H(t) psi,   U(T) psi(0) = psi(T),   mu = exp(-i eps T)

The drive phase starts at t0 = 0 (cos(omega t0) = 1). Quasienergies do not
depend on that choice, U(T) itself does.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
import structlog
from scipy.integrate import solve_ivp

from ptfloquet.config import get_settings
from ptfloquet.core.constants import INTEGRATOR_DEFAULTS, TIGHT_INTEGRATOR
from ptfloquet.core.errors import StepSizeUnderflow
from ptfloquet.core.model import (
    Mat2C,
    ModelParams,
    PhaseLabel,
    Quasienergy,
    TwoLevelState,
    det2,
    trace2,
)

logger = structlog.get_logger(__name__)

ComplexVec = npt.NDArray[np.complex128]

# |mu1 - mu2| below this marks an exceptional point
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Error control for the adaptive Runge-Kutta integrator.

    Attributes:
        rel_tol: Relative local error tolerance
        abs_tol: Absolute local error tolerance
        max_step_fraction: Largest step as a fraction of the period, <= 1/20
        method: scipy embedded pair, "RK45" (5(4)) or "DOP853"
    """

    rel_tol: float = INTEGRATOR_DEFAULTS["rel_tol"]
    abs_tol: float = INTEGRATOR_DEFAULTS["abs_tol"]
    max_step_fraction: float = INTEGRATOR_DEFAULTS["max_step_fraction"]
    method: str = INTEGRATOR_DEFAULTS["method"]

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError(f"tolerances must be positive: {self.rel_tol}, {self.abs_tol}")
        if not 0 < self.max_step_fraction <= 0.05:
            raise ValueError(
                f"max_step_fraction must be in (0, 1/20], got {self.max_step_fraction}"
            )
        if self.method not in ("RK45", "DOP853"):
            raise ValueError(f"unsupported integration method: {self.method}")

    @classmethod
    def from_settings(cls, settings: Any = None) -> IntegratorConfig:
        """Build from the process settings (or the given Settings object)."""
        if settings is None:
            settings = get_settings()
        return cls(
            rel_tol=settings.rel_tol,
            abs_tol=settings.abs_tol,
            max_step_fraction=settings.max_step_fraction,
            method=settings.ode_method,
        )

    @classmethod
    def tight(cls) -> IntegratorConfig:
        """Tolerances used for the narrowest multi-photon windows."""
        return cls(
            rel_tol=TIGHT_INTEGRATOR["rel_tol"],
            abs_tol=TIGHT_INTEGRATOR["abs_tol"],
            max_step_fraction=TIGHT_INTEGRATOR["max_step_fraction"],
            method=TIGHT_INTEGRATOR["method"],
        )

    def scaled(self, factor: float) -> IntegratorConfig:
        """Same config with both tolerances multiplied by factor."""
        return IntegratorConfig(
            rel_tol=self.rel_tol * factor,
            abs_tol=self.abs_tol * factor,
            max_step_fraction=self.max_step_fraction,
            method=self.method,
        )

    def max_step(self, period: float) -> float:
        return self.max_step_fraction * period


@dataclass(frozen=True)
class MonodromyResult:
    """
    One-period propagator U(T) and its eigenvalues.

    mu1 is the eigenvalue of larger modulus, so Im(eps_1) >= 0.
    """

    U: Mat2C
    mu1: complex
    mu2: complex
    period: float
    omega: float

    @property
    def det(self) -> complex:
        return det2(self.U)

    @property
    def trace(self) -> complex:
        return trace2(self.U)

    @property
    def det_error(self) -> float:
        """|det U - 1|, zero for exact propagation of a traceless H."""
        return abs(self.det - 1.0)

    @property
    def degenerate(self) -> bool:
        """True at (numerically) an exceptional point: the two multipliers coalesce."""
        return abs(self.mu1 - self.mu2) < DEGENERACY_TOL


def schrodinger_rhs(p: ModelParams) -> Callable[[float, ComplexVec], ComplexVec]:
    """
    Right-hand side f(t, psi) = -i H(t) psi for scipy's solve_ivp.

    Writes out the 2x2 product instead of building H(t) on every call.
    """
    half_split = 0.5 * p.omega0
    drive_amp = 2.0 * p.coupling
    omega = p.omega
    two_pi = 2.0 * math.pi

    def rhs(t: float, psi: ComplexVec) -> ComplexVec:
        c = drive_amp * math.cos(math.fmod(omega * t, two_pi))
        up, down = psi[0], psi[1]
        return np.array(
            [-1j * (half_split * up + c * down), -1j * (c * up - half_split * down)],
            dtype=np.complex128,
        )

    return rhs


def integrate(
    p: ModelParams,
    psi0: npt.ArrayLike,
    t0: float,
    t1: float,
    cfg: IntegratorConfig,
    t_eval: npt.ArrayLike | None = None,
) -> Any:
    """
    Run solve_ivp on the complex two-component state.

    Returns:
        scipy OdeResult (y has shape (2, len(t)))

    Raises:
        StepSizeUnderflow: the adaptive step control stalled before t1
    """
    y0 = np.asarray(psi0, dtype=np.complex128).reshape(2)
    sol = solve_ivp(
        schrodinger_rhs(p),
        (t0, t1),
        y0,
        method=cfg.method,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step(p.period),
        t_eval=t_eval,
    )
    if sol.status != 0:
        logger.warning("integration_failed", params=repr(p), t0=t0, t1=t1, message=sol.message)
        raise StepSizeUnderflow(f"integration stopped before t={t1}: {sol.message}")
    return sol


def propagate(
    p: ModelParams,
    psi0: TwoLevelState,
    t0: float,
    t1: float,
    cfg: IntegratorConfig | None = None,
) -> TwoLevelState:
    """
    Solve i dpsi/dt = H(t) psi from t0 to t1.

    Args:
        p: Model parameters
        psi0: State at t0
        t0: Start time
        t1: End time, t1 >= t0
        cfg: Integrator settings (defaults from the process settings)

    Returns:
        State at t1

    Raises:
        ValueError: t1 < t0
        StepSizeUnderflow: the adaptive step control stalled
    """
    if t1 < t0:
        raise ValueError(f"t1 must not precede t0: t0={t0}, t1={t1}")
    if t1 == t0:
        return psi0
    cfg = cfg or IntegratorConfig.from_settings()
    sol = integrate(p, psi0.as_array(), t0, t1, cfg)
    return TwoLevelState.from_array(sol.y[:, -1])


def _multipliers(tr: complex, det: complex) -> tuple[complex, complex]:
    """Roots of mu^2 - tr mu + det, larger modulus first, without cancellation."""
    disc = cmath.sqrt(tr * tr - 4.0 * det)
    plus, minus = tr + disc, tr - disc
    big = plus if abs(plus) >= abs(minus) else minus
    if big == 0:
        return 0j, 0j
    mu1 = 0.5 * big
    return mu1, det / mu1


def monodromy(p: ModelParams, cfg: IntegratorConfig | None = None) -> MonodromyResult:
    """
    One-period propagator U(T), T = 2 pi / omega, starting at t = 0.

    Column k of U is the state at T that started as basis vector k.

    Example:
        >>> m = monodromy(ModelParams(omega0=1, omega=1.5, lam=0))
        >>> round(abs(m.mu1), 8)
        1.0
    """
    cfg = cfg or IntegratorConfig.from_settings()
    period = p.period
    col_up = propagate(p, TwoLevelState.up(), 0.0, period, cfg)
    col_down = propagate(p, TwoLevelState.down(), 0.0, period, cfg)
    U = np.column_stack([col_up.as_array(), col_down.as_array()])

    mu1, mu2 = _multipliers(trace2(U), det2(U))
    result = MonodromyResult(U=U, mu1=mu1, mu2=mu2, period=period, omega=p.omega)
    logger.debug(
        "monodromy_done",
        omega=p.omega,
        lam=p.lam,
        drive=p.drive.value,
        det_err=result.det_error,
        im_trace=result.trace.imag,
    )
    return result


def quasienergies(m: MonodromyResult) -> tuple[Quasienergy, Quasienergy]:
    """
    Quasienergies eps = (i/T) Log mu, real parts reduced into [0, omega).

    U is first normalised to unit determinant so that mu1 mu2 = 1 exactly;
    eps_1 comes from the principal logarithm of the larger multiplier and
    eps_2 = -eps_1 (mod omega). The pair therefore satisfies
    eps_1 + eps_2 = 0 (mod omega) and Im eps_1 = -Im eps_2 by construction,
    with Im eps_1 = ln|mu_1| / T >= 0.

    An exceptional point is flagged by m.degenerate, not raised.
    """
    scale = cmath.sqrt(m.det)
    tr = m.trace / scale if scale != 0 else m.trace
    mu1, _ = _multipliers(tr, 1.0 + 0j)
    eps1 = 1j * cmath.log(mu1) / m.period
    return (
        Quasienergy.from_complex(eps1, m.omega),
        Quasienergy.from_complex(-eps1, m.omega),
    )


def max_im_eps(p: ModelParams, cfg: IntegratorConfig | None = None) -> float:
    """Largest imaginary part of the two quasienergies (the growth rate), >= 0."""
    if p.lam == 0:
        # undriven H is Hermitian; exact also at omega = omega0/k (degenerate multipliers)
        return 0.0
    q1, q2 = quasienergies(monodromy(p, cfg))
    return max(q1.im, q2.im)


def classify(
    p: ModelParams,
    cfg: IntegratorConfig | None = None,
    threshold: float | None = None,
) -> PhaseLabel:
    """
    PT phase of a parameter point: BROKEN iff max Im(eps) > threshold.

    threshold is an absolute rate; the default is settings.threshold * omega0.
    """
    if threshold is None:
        threshold = get_settings().threshold * p.omega0
    rate = max_im_eps(p, cfg)
    return PhaseLabel.BROKEN if rate > threshold else PhaseLabel.SYMMETRIC
