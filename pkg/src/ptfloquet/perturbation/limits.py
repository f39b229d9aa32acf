"""
Low- and high-frequency limits of the imaginary drive.

Low frequency (omega -> 0): the Hamiltonian is frozen at its peak,
(omega0/2) sigma_z + 2 i lam sigma_x, with eigenvalues
+-(1/2) sqrt(omega0^2 - 16 lam^2). These turn complex at lam = omega0/4, which
is where the boundary tends for omega -> 0.

High frequency (omega >> omega0): with omega0 = 0 the Floquet matrix splits
into two Wannier-Stark ladders (linear potential m omega, hopping g lam)
with eigenstates phi_m = J_{n-m}(2 g lam / omega) and energies n omega.
Treating omega0 to first order couples the two ladders with strength
(omega0/2) I_0(4 lam / omega), and PT symmetry breaks when this reaches
omega/2:

    omega / omega0 = I_0(4 lam* / omega)
"""

from __future__ import annotations

import cmath

import numpy as np
import numpy.typing as npt
from scipy.optimize import bisect

from ptfloquet.core.constants import DEFAULT_OMEGA0
from ptfloquet.core.errors import DomainError
from ptfloquet.core.model import DriveType
from ptfloquet.specialfn import MAX_ARG, bessel_i, bessel_j, bessel_j_imaginary


def low_freq_threshold(omega0: float = DEFAULT_OMEGA0) -> float:
    """lam* = omega0/4, where the frozen Hamiltonian loses its real spectrum."""
    return 0.25 * omega0


def static_quasienergies(lam: float, omega0: float = DEFAULT_OMEGA0) -> tuple[complex, complex]:
    """
    Eigenvalues of (omega0/2) sigma_z + 2 i lam sigma_x, larger imaginary part first.

    Real for lam <= omega0/4, a purely imaginary pair above.
    """
    root = 0.5 * cmath.sqrt(omega0 * omega0 - 16.0 * lam * lam)
    if root.imag < 0:
        root = -root
    return root, -root


def high_freq_boundary(
    omega: float, omega0: float = DEFAULT_OMEGA0, *, rtol: float = 1e-10
) -> float:
    """
    lam* solving omega/omega0 = I_0(4 lam*/omega), by bisection on the
    strictly increasing I_0.

    Documented validity: omega >= 1.2 omega0. At omega = 2 omega0 the root is
    lam* ~ 0.906 omega0.

    Raises:
        DomainError: omega < omega0 (I_0 >= 1 has no root) or omega/omega0
            beyond I_0 at the largest supported argument
    """
    target = omega / omega0
    if target < 1.0:
        raise DomainError(f"high-frequency boundary needs omega >= omega0, got omega={omega}")
    if target == 1.0:
        return 0.0
    if bessel_i(0, MAX_ARG) < target:
        raise DomainError(f"omega/omega0={target:g} beyond the supported Bessel range")

    upper = 1.0
    while bessel_i(0, upper) < target:
        upper = min(2.0 * upper, MAX_ARG)
    x = bisect(lambda v: bessel_i(0, v) - target, 0.0, upper, xtol=1e-15, rtol=rtol)
    return 0.25 * omega * float(x)


def high_freq_shift(lam: float, omega: float, omega0: float = DEFAULT_OMEGA0) -> float:
    """First-order coupling of the two ladders, (omega0/2) I_0(4 lam/omega)."""
    return 0.5 * omega0 * bessel_i(0, 4.0 * lam / omega)


def wannier_stark_state(
    n: int,
    lam: float,
    omega: float,
    M: int,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
) -> npt.NDArray[np.complex128]:
    """
    Ladder eigenstate with energy n omega on the sites m = -M..M.

    Components are J_{n-m}(2 lam/omega) for the real drive and
    J_{n-m}(2 i lam/omega) = i^(n-m) I_{n-m}(2 lam/omega) for the imaginary one.
    Pair with floquet.wannier_stark_chain for the residual check.
    """
    if M < 1:
        raise ValueError(f"chain half-length M must be positive, got {M}")
    x = 2.0 * lam / omega
    hermitian = DriveType.parse(drive) is DriveType.HERMITIAN
    sites = range(-M, M + 1)
    if hermitian:
        return np.array([bessel_j(n - m, x) for m in sites], dtype=np.complex128)
    return np.array([bessel_j_imaginary(n - m, x) for m in sites], dtype=np.complex128)
