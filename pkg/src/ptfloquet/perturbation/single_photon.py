"""
Single-photon resonance omega ~ omega0.

Effective Hamiltonian for |up 0>, |down 1>:

    lowest order (RWA):  [[ omega0/2,  g lam ], [ g lam, -omega0/2 + omega ]]
    next order:          level shifts +- s lam^2 / (2 omega0) on the diagonal

with g = 1, s = +1 for the Hermitian drive and g = i, s = -1 for the
imaginary one (lam -> i lam). The eigenvalues are eps = (omega +- Omega)/2:

    Omega^2       = (omega - omega0)^2 + s 4 lam^2
    Omega_tilde^2 = (omega - omega0)^2 + s 4 lam^2 - s 2 (omega - omega0) lam^2 / omega0

Omega_tilde^2 is the displayed polynomial, truncated at O(lam^3); it drifts
from the numerics once lam grows past ~0.2 omega0. Validity of the whole
module: |omega - omega0| up to about omega0/2 (documented, not enforced).
"""

from __future__ import annotations

import cmath
import math
from enum import Enum

from ptfloquet.core.constants import DEFAULT_OMEGA0
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.floquet.salwen import EffectiveTwoLevel


class ExpansionOrder(str, Enum):
    """Order of the single-photon effective Hamiltonian."""

    LOWEST = "lowest"
    NEXT = "next"

    @classmethod
    def parse(cls, value: str | ExpansionOrder) -> ExpansionOrder:
        if isinstance(value, ExpansionOrder):
            return value
        aliases = {"rwa": "lowest", "lo": "lowest", "nlo": "next", "next_order": "next"}
        key = value.strip().lower()
        return cls(aliases.get(key, key))


def mode_sign(drive: DriveType | str) -> int:
    """+1 for the Hermitian drive, -1 for the imaginary one (the sign of g^2)."""
    return 1 if DriveType.parse(drive) is DriveType.HERMITIAN else -1


def rabi_freq_sq(p: ModelParams, order: ExpansionOrder | str = ExpansionOrder.LOWEST) -> float:
    """
    Squared (effective) Rabi frequency Omega^2 or Omega_tilde^2.

    Negative values mean complex quasienergies, i.e. the PT-broken phase.

    Example (imaginary drive, omega = 1.1, lam = 0.05, next order):
        0.01 - 0.01 + 0.0005 = 5e-4, i.e. just inside the symmetric phase
    """
    order = ExpansionOrder.parse(order)
    s = mode_sign(p.drive)
    detuning = p.omega - p.omega0
    value = detuning**2 + s * 4.0 * p.lam**2
    if order is ExpansionOrder.NEXT:
        value -= s * 2.0 * detuning * p.lam**2 / p.omega0
    return value


def single_photon_boundary(
    omega: float,
    omega0: float = DEFAULT_OMEGA0,
    order: ExpansionOrder | str = ExpansionOrder.NEXT,
) -> float:
    """
    Critical drive strength lam* of the single-photon PT boundary.

    lowest: |omega - omega0| / 2 (linear under the rotating-wave approximation)
    next:   |omega - omega0| / 2 * (1 + (omega - omega0) / (4 omega0))

    Documented validity: 0.5 omega0 < omega < 1.6 omega0.
    """
    order = ExpansionOrder.parse(order)
    detuning = omega - omega0
    lam_star = 0.5 * abs(detuning)
    if order is ExpansionOrder.NEXT:
        lam_star *= 1.0 + detuning / (4.0 * omega0)
    return lam_star


def bloch_siegert(
    lam: float,
    omega0: float = DEFAULT_OMEGA0,
    mode: DriveType | str = DriveType.ANTI_HERMITIAN,
) -> float:
    """
    Shifted resonance frequency omega_res.

    Hermitian: omega0 + lam^2/omega0 (maximal Rabi amplitude).
    Imaginary drive: omega0 - lam^2/omega0 (fastest growth), the opposite
    direction. Documented validity: lam <= 0.3 omega0.
    """
    return omega0 + mode_sign(mode) * lam**2 / omega0


def hermitian_resonance_oracle(
    p: ModelParams, order: ExpansionOrder | str = ExpansionOrder.NEXT
) -> float:
    """
    Rabi frequency Omega (lowest) or Omega_tilde (next) of the Hermitian model.

    The splitting of the two real quasienergies equals this value up to
    O(lam^3).

    Raises:
        ValueError: p is not a Hermitian drive
    """
    if not p.is_hermitian:
        raise ValueError("the Rabi-frequency oracle is defined for the Hermitian drive only")
    return math.sqrt(max(rabi_freq_sq(p, order), 0.0))


def effective_hamiltonian_single(
    p: ModelParams, order: ExpansionOrder | str = ExpansionOrder.NEXT
) -> EffectiveTwoLevel:
    """
    Closed-form effective 2x2 Hamiltonian for |up 0>, |down 1>.

    eps is the eigenvalue (omega + Omega)/2 branch, with the larger
    imaginary part in the broken phase.
    """
    order = ExpansionOrder.parse(order)
    shift = 0.0
    if order is ExpansionOrder.NEXT:
        shift = mode_sign(p.drive) * p.lam**2 / (2.0 * p.omega0)
    h11 = complex(0.5 * p.omega0 + shift)
    h22 = complex(-0.5 * p.omega0 + p.omega - shift)
    coupling = complex(p.coupling)
    draft = EffectiveTwoLevel(h11=h11, h12=coupling, h21=coupling, h22=h22, eps=0j)
    upper, _ = draft.eigenvalues()
    return EffectiveTwoLevel(h11=h11, h12=coupling, h21=coupling, h22=h22, eps=upper)


def perturbative_quasienergies(
    p: ModelParams, order: ExpansionOrder | str = ExpansionOrder.NEXT
) -> tuple[complex, complex]:
    """
    eps = (omega +- Omega)/2 from rabi_freq_sq (complex in the broken phase).

    The first entry carries the non-negative imaginary part.
    """
    root = cmath.sqrt(rabi_freq_sq(p, order))
    if root.imag < 0:
        root = -root
    return 0.5 * (p.omega + root), 0.5 * (p.omega - root)
