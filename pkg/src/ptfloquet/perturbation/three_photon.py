"""
Three-photon resonance omega0 ~ 3 omega, carried one order beyond the line.

Bookkeeping coordinates around the resonance, with a small parameter alpha:

    lam = lam' alpha,   eps - omega0/2 = eps' alpha^2,   omega - omega0/3 = Delta alpha^2

alpha is set to 1 everywhere below, so lam' = lam and Delta = omega - omega0/3.

The effective Hamiltonian for |up 0>, |down 3> has different level shifts
delta_a, delta_b (accurate to fourth order) and the coupling 9 i lam^3 /
(4 omega0^2). Eliminating eps' gives the PT boundary

    0 = (3 lam^2 + 2 Delta omega0)^2
        + 9 lam^2 (5 lam^2 + 4 Delta omega0)(11 lam^2 + 2 Delta omega0) / (8 omega0^2)

Dropping the second term gives back the lowest-order line of multiphoton.py.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import structlog
from scipy.optimize import brentq

from ptfloquet.core.constants import DEFAULT_OMEGA0
from ptfloquet.core.errors import NO_WINDOW, NoConvergence, NoWindow, NumericalFailure

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ScaledCoords:
    """(alpha, lam', Delta, eps') around the three-photon resonance."""

    alpha: float
    lambda_p: float
    Delta: float
    eps_p: float

    @classmethod
    def from_physical(
        cls,
        lam: float,
        omega: float,
        eps: float | None = None,
        omega0: float = DEFAULT_OMEGA0,
        alpha: float = 1.0,
    ) -> ScaledCoords:
        """Scaled coordinates; eps defaults to omega0/2 (eps' = 0)."""
        if alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        eps = 0.5 * omega0 if eps is None else eps
        return cls(
            alpha=alpha,
            lambda_p=lam / alpha,
            Delta=(omega - omega0 / 3.0) / alpha**2,
            eps_p=(eps - 0.5 * omega0) / alpha**2,
        )


def three_photon_shifts(
    lam: float, omega: float, eps: float, omega0: float = DEFAULT_OMEGA0
) -> tuple[float, float, complex]:
    """
    Level shifts (delta_a, delta_b) and coupling u of the imaginary drive.

    Returns:
        (delta_a, delta_b, u) with u purely imaginary
    """
    c = ScaledCoords.from_physical(lam, omega, eps, omega0)
    lam2 = c.lambda_p**2
    D = c.Delta * omega0
    E = c.eps_p * omega0
    delta_a = -9.0 * lam2 / (4.0 * omega0) - 9.0 * lam2 * (9.0 * lam2 + 6.0 * D - 10.0 * E) / (
        32.0 * omega0**3
    )
    delta_b = 9.0 * lam2 / (4.0 * omega0) + 9.0 * lam2 * (9.0 * lam2 - 24.0 * D + 10.0 * E) / (
        32.0 * omega0**3
    )
    u = 9j * c.lambda_p**3 / (4.0 * omega0**2)
    return delta_a, delta_b, u


def three_photon_quasienergy(
    lam: float,
    omega: float,
    omega0: float = DEFAULT_OMEGA0,
    *,
    max_iter: int = 100,
    tol: float = 1e-14,
) -> complex:
    """
    Self-consistent eigenvalue of the three-photon effective Hamiltonian
    near omega0/2 (the shifts depend on eps itself).

    Returns the root with the non-negative imaginary part.

    Raises:
        NoConvergence: fixed-point iteration did not settle
    """
    eps: complex = 0.5 * omega0
    for _ in range(max_iter):
        # shifts are linear in eps'; the real part drives the iteration
        delta_a, delta_b, u = three_photon_shifts(lam, omega, eps.real, omega0)
        root = 0.5 * cmath.sqrt(4.0 * u * u + (delta_a - delta_b - 3.0 * omega + omega0) ** 2)
        if root.imag < 0:
            root = -root
        centre = 0.5 * (3.0 * omega + delta_a + delta_b)
        candidates = (centre + root, centre - root)
        new = min(candidates, key=lambda z: abs(z.real - 0.5 * omega0))
        if abs(new - eps) < tol:
            return new
        eps = new
    raise NoConvergence(f"three-photon quasienergy did not converge in {max_iter} iterations")


def _boundary_residual(lam: float, D: float, omega0: float) -> float:
    lam2 = lam * lam
    leading = (3.0 * lam2 + 2.0 * D) ** 2
    correction = 9.0 * lam2 * (5.0 * lam2 + 4.0 * D) * (11.0 * lam2 + 2.0 * D) / (8.0 * omega0**2)
    return leading + correction


def three_photon_boundary(
    omega: float, omega0: float = DEFAULT_OMEGA0, *, max_doublings: int = 60
) -> tuple[float, float] | NoWindow:
    """
    Window edges (lam_lo, lam_hi) in lambda at fixed omega.

    The residual is 4 (Delta omega0)^2 > 0 at lam = 0 and -9 lam^6/omega0^2 < 0
    on the lowest-order line 3 lam^2 = -2 Delta omega0, so one edge lies on
    each side of the line. Documented validity: -0.05 omega0 <= Delta < 0.

    Returns:
        (lam_lo, lam_hi), or NO_WINDOW for Delta >= 0

    Raises:
        NumericalFailure: no sign change above the line
    """
    D = (omega - omega0 / 3.0) * omega0
    if D >= 0:
        return NO_WINDOW
    lam_line = math.sqrt(-2.0 * D / 3.0)
    if _boundary_residual(lam_line, D, omega0) >= 0:
        # underflow of -9 lam^6 for a vanishing detuning
        return NO_WINDOW

    lo = brentq(_boundary_residual, 0.0, lam_line, args=(D, omega0), xtol=1e-15)
    upper = 2.0 * lam_line
    for _ in range(max_doublings):
        if _boundary_residual(upper, D, omega0) > 0:
            hi = brentq(_boundary_residual, lam_line, upper, args=(D, omega0), xtol=1e-15)
            return float(lo), float(hi)
        upper *= 2.0
    raise NumericalFailure(f"no upper three-photon edge found above lam={lam_line:.6g}")


def three_photon_window_delta(
    lam: float, omega0: float = DEFAULT_OMEGA0
) -> tuple[float, float] | NoWindow:
    """
    Window edges (Delta_lo, Delta_hi) in Delta = omega - omega0/3 at fixed lambda.

    The boundary is a quadratic in D = Delta omega0:

        D^2 (4 + 9 L/w^2) + D (12 L + 60.75 L^2/w^2) + 9 L^2 + 61.875 L^3/w^2 = 0

    with L = lam^2 and w = omega0. At lam = 0.1 omega0 the edges sit near
    Delta = -0.01695 and -0.01387 (in units of omega0).
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    L = lam * lam
    w2 = omega0 * omega0
    a = 4.0 + 9.0 * L / w2
    b = 12.0 * L + 60.75 * L * L / w2
    c = 9.0 * L * L + 61.875 * L**3 / w2
    disc = b * b - 4.0 * a * c
    if lam == 0 or disc <= 0:
        return NO_WINDOW
    # stable quadratic: b > 0, so q < 0 and both roots are negative
    q = -0.5 * (b + math.sqrt(disc))
    roots = sorted((q / a, c / q))
    logger.debug("three_photon_window", lam=lam, D_lo=roots[0], D_hi=roots[1])
    return roots[0] / omega0, roots[1] / omega0
