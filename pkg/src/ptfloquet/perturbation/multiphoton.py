"""
Multi-photon resonances omega0 ~ (2n+1) omega, n >= 1.

The effective Hamiltonian for |up 0>, |down 2n+1> is

    [[ omega0/2 + delta,  u ], [ u, -omega0/2 + (2n+1) omega - delta ]]

with, to leading order,

    delta = s (2n+1) lam^2 / (2 n (n+1) omega)
    u     = (-1)^n lam^(2n+1) / (2^2n (n!)^2 omega^2n)      Hermitian
    u     = i lam^(2n+1) / (2^2n (n!)^2 omega^2n)           imaginary drive

and Omega_tilde^2 = [(2n+1) omega - omega0 - 2 delta]^2 + 4 u^2.

To this order the boundary is only a line (Omega_tilde^2 >= 0 without u).
window_rough keeps u and freezes delta at its value on resonance,
omega_c = omega0/(2n+1), which gives rough window edges around the line.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import NamedTuple

import structlog
from scipy.optimize import brentq

from ptfloquet.core.constants import DEFAULT_OMEGA0
from ptfloquet.core.errors import DomainError
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.floquet.salwen import EffectiveTwoLevel
from ptfloquet.perturbation.single_photon import mode_sign
from ptfloquet.specialfn import factorial

logger = structlog.get_logger(__name__)

# doubling steps allowed when bracketing a rough window edge
_MAX_BRACKET_STEPS = 200


@dataclass(frozen=True, order=True)
class ResonanceOrder:
    """
    Resonance index n: 0 is the single-photon resonance omega ~ omega0,
    n >= 1 is omega0 ~ (2n+1) omega.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"resonance order must be non-negative, got {self.n}")

    @classmethod
    def of(cls, n: int | ResonanceOrder) -> ResonanceOrder:
        return n if isinstance(n, ResonanceOrder) else cls(int(n))

    @property
    def photons(self) -> int:
        return 2 * self.n + 1

    def resonance_omega(self, omega0: float = DEFAULT_OMEGA0) -> float:
        """Unshifted resonance omega0 / (2n+1)."""
        return omega0 / self.photons

    def __int__(self) -> int:
        return self.n


@dataclass(frozen=True)
class EffectiveParams:
    """
    Level shift delta, effective coupling u and Omega_tilde^2.

    For the imaginary drive u is purely imaginary and delta is negative.
    """

    delta: float
    u: complex
    omega_eff_sq: float


class RoughWindow(NamedTuple):
    """Window estimate: Stirling width and peak rate, numeric edges in omega."""

    width: float
    max_im_eps: float
    edges: tuple[float, float] | None


def _multiphoton_order(n: int | ResonanceOrder) -> ResonanceOrder:
    order = ResonanceOrder.of(n)
    if order.n < 1:
        raise ValueError(f"multi-photon formulas need n >= 1, got {order.n}")
    return order


def coupling_magnitude(n: int | ResonanceOrder, omega: float, lam: float) -> float:
    """|u| = lam^(2n+1) / (2^2n (n!)^2 omega^2n), exact factorials."""
    k = _multiphoton_order(n).n
    return lam ** (2 * k + 1) / (4.0**k * float(factorial(k)) ** 2 * omega ** (2 * k))


def level_shift(
    n: int | ResonanceOrder, omega: float, lam: float, mode: DriveType | str
) -> float:
    """delta = s (2n+1) lam^2 / (2 n (n+1) omega)."""
    k = _multiphoton_order(n).n
    return mode_sign(mode) * (2 * k + 1) * lam**2 / (2.0 * k * (k + 1) * omega)


def multiphoton_delta_u(
    n: int | ResonanceOrder,
    omega: float,
    lam: float,
    mode: DriveType | str = DriveType.ANTI_HERMITIAN,
    omega0: float = DEFAULT_OMEGA0,
) -> EffectiveParams:
    """
    Leading-order delta and u of the (2n+1)-photon resonance.

    Example (n=1, imaginary drive, omega = 1/3, lam = 0.1):
        delta = -0.0225, u = 0.00225j
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    order = _multiphoton_order(n)
    delta = level_shift(order, omega, lam, mode)
    magnitude = coupling_magnitude(order, omega, lam)
    if DriveType.parse(mode) is DriveType.HERMITIAN:
        u = complex((-1) ** order.n * magnitude)
    else:
        u = 1j * magnitude
    detuning = order.photons * omega - omega0 - 2.0 * delta
    omega_eff_sq = detuning**2 + 4.0 * (u * u).real
    return EffectiveParams(delta=delta, u=u, omega_eff_sq=omega_eff_sq)


def multiphoton_rabi_freq_sq(n: int | ResonanceOrder, p: ModelParams) -> float:
    """Omega_tilde^2 of the (2n+1)-photon resonance; negative means PT-broken."""
    return multiphoton_delta_u(n, p.omega, p.lam, p.drive, p.omega0).omega_eff_sq


def effective_hamiltonian_multiphoton(
    n: int | ResonanceOrder, p: ModelParams
) -> EffectiveTwoLevel:
    """Closed-form effective 2x2 Hamiltonian for |up 0>, |down 2n+1>."""
    order = _multiphoton_order(n)
    eff = multiphoton_delta_u(order, p.omega, p.lam, p.drive, p.omega0)
    h11 = complex(0.5 * p.omega0 + eff.delta)
    h22 = complex(-0.5 * p.omega0 + order.photons * p.omega - eff.delta)
    draft = EffectiveTwoLevel(h11=h11, h12=eff.u, h21=eff.u, h22=h22, eps=0j)
    upper, _ = draft.eigenvalues()
    return EffectiveTwoLevel(h11=h11, h12=eff.u, h21=eff.u, h22=h22, eps=upper)


def multiphoton_line(
    n: int | ResonanceOrder, omega: float, omega0: float = DEFAULT_OMEGA0
) -> float:
    """
    Lowest-order line on which PT symmetry is on the verge of breaking:

        lam(n) = sqrt( -(n (n+1) omega0 / (2n+1)) (omega - omega0/(2n+1)) )

    Raises:
        DomainError: omega > omega0/(2n+1) (negative root argument)
    """
    order = _multiphoton_order(n)
    k = order.n
    offset = omega - order.resonance_omega(omega0)
    if offset > 0:
        raise DomainError(
            f"omega={omega} lies above omega0/(2n+1)={order.resonance_omega(omega0)}: no line"
        )
    return math.sqrt(-(k * (k + 1) * omega0 / order.photons) * offset)


def multiphoton_line_inverse(
    n: int | ResonanceOrder, lam: float, omega0: float = DEFAULT_OMEGA0
) -> float:
    """omega on the lowest-order line at drive strength lam."""
    order = _multiphoton_order(n)
    k = order.n
    return order.resonance_omega(omega0) - order.photons * lam**2 / (k * (k + 1) * omega0)


def _bracket_root(f, start: float, step: float, direction: int) -> float | None:
    """Walk from start in direction until f changes sign, then brentq."""
    f_start = f(start)
    a = start
    for _ in range(_MAX_BRACKET_STEPS):
        b = a + direction * step
        if b <= 0:
            return None
        if f(b) * f_start <= 0:
            lo, hi = (start, b) if start < b else (b, start)
            return float(brentq(f, lo, hi, xtol=1e-15, rtol=4 * sys.float_info.epsilon))
        a = b
        step *= 2.0
    return None


def _rough_edges(order: ResonanceOrder, lam: float, omega0: float) -> tuple[float, float] | None:
    omega_c = order.resonance_omega(omega0)
    if lam == 0:
        return (omega_c, omega_c)
    delta_c = level_shift(order, omega_c, lam, DriveType.ANTI_HERMITIAN)
    centre = (omega0 + 2.0 * delta_c) / order.photons
    if centre <= 0:
        return None

    # (2n+1) omega - omega0 - 2 delta_c = +-2i u(omega) with u = i|u|
    def upper(omega: float) -> float:
        return order.photons * omega - omega0 - 2.0 * delta_c - 2.0 * coupling_magnitude(
            order, omega, lam
        )

    def lower(omega: float) -> float:
        return order.photons * omega - omega0 - 2.0 * delta_c + 2.0 * coupling_magnitude(
            order, omega, lam
        )

    step = 2.0 * coupling_magnitude(order, centre, lam) / order.photons
    hi = _bracket_root(upper, centre, step, +1)
    lo = _bracket_root(lower, centre, step, -1)
    if lo is None or hi is None:
        logger.debug("rough_edges_missing", n=order.n, lam=lam)
        return None
    return (lo, hi)


def window_rough(
    n: int | ResonanceOrder, lam: float, omega0: float = DEFAULT_OMEGA0
) -> RoughWindow:
    """
    Rough PT-broken window of the (2n+1)-photon resonance.

    width       ~ 2 (e lam)^(2n+1) / (pi n (2n+1) omega0^2n)   (Stirling)
    max Im(eps) ~ (e lam)^(2n+1) / (2 pi n omega0^2n)           (Stirling)
    edges: roots in omega of (2n+1) omega - omega0 - 2 delta = +-2i u(omega)
           with exact factorials; None if the rough condition has no root.

    Raises:
        DomainError: lam >= omega0 / e
    """
    order = _multiphoton_order(n)
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    if lam >= omega0 / math.e:
        raise DomainError(f"window estimate assumes lam < omega0/e, got lam={lam}")
    k = order.n
    e_lam = (math.e * lam) ** order.photons
    width = 2.0 * e_lam / (math.pi * k * order.photons * omega0 ** (2 * k))
    peak = e_lam / (2.0 * math.pi * k * omega0 ** (2 * k))
    return RoughWindow(width=width, max_im_eps=peak, edges=_rough_edges(order, lam, omega0))
