"""
Domain types for the periodically driven two-level (Rabi) model.

The model Hamiltonian is

    H(t) = (omega0 / 2) sigma_z + g * 2 lambda cos(omega t) sigma_x

with g = 1 for the ordinary (Hermitian) drive and g = i for the imaginary
drive that produces alternating gain and loss. The Schrodinger convention is
i dpsi/dt = H psi with hbar = 1.

Everything here is an immutable value and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import numpy.typing as npt

from ptfloquet.core.constants import DEFAULT_OMEGA0, SIGMA_X, SIGMA_Z

# 2x2 complex matrix. Plain numpy arrays keep the arithmetic in LAPACK/BLAS.
Mat2C = npt.NDArray[np.complex128]


class DriveType(str, Enum):
    """Selects the real drive 2 lambda sigma_x cos(wt) or the imaginary one."""

    HERMITIAN = "hermitian"
    ANTI_HERMITIAN = "anti_hermitian"

    @property
    def coupling(self) -> complex:
        """Prefactor g multiplying lambda in every coupling matrix element."""
        return 1.0 + 0j if self is DriveType.HERMITIAN else 1j

    @classmethod
    def parse(cls, value: str | DriveType) -> DriveType:
        if isinstance(value, DriveType):
            return value
        key = value.strip().lower().replace("-", "_")
        aliases = {"herm": "hermitian", "antiherm": "anti_hermitian", "pt": "anti_hermitian"}
        return cls(aliases.get(key, key))


class PhaseLabel(str, Enum):
    """PT phase of a parameter point."""

    SYMMETRIC = "symmetric"
    BROKEN = "broken"


@dataclass(frozen=True)
class ModelParams:
    """
    Physical parameters (omega0, omega, lambda) plus the drive type.

    This is the single source of physical truth: every numerical and
    perturbative routine takes one of these.

    Attributes:
        omega0: Level splitting, > 0
        omega: Drive frequency, > 0
        lam: Drive strength, >= 0 (the sign of lambda is a gauge choice)
        drive: Hermitian or anti-Hermitian (imaginary) drive
    """

    omega0: float = DEFAULT_OMEGA0
    omega: float = DEFAULT_OMEGA0
    lam: float = 0.0
    drive: DriveType = DriveType.ANTI_HERMITIAN

    def __post_init__(self) -> None:
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be positive and finite, got {self.omega0}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega}")
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be non-negative and finite, got {self.lam}")
        if not isinstance(self.drive, DriveType):
            object.__setattr__(self, "drive", DriveType.parse(self.drive))

    @property
    def period(self) -> float:
        """Drive period T = 2 pi / omega."""
        return 2.0 * math.pi / self.omega

    @property
    def coupling(self) -> complex:
        """Floquet coupling g * lambda between neighbouring photon blocks."""
        return self.drive.coupling * self.lam

    @property
    def is_hermitian(self) -> bool:
        return self.drive is DriveType.HERMITIAN

    def with_(self, **changes: float | DriveType) -> ModelParams:
        """Copy with some fields replaced."""
        return replace(self, **changes)

    def scaled(self, s: float) -> ModelParams:
        """Uniform rescaling (omega0, omega, lambda) -> s * (...)."""
        if s <= 0:
            raise ValueError(f"scale factor must be positive, got {s}")
        return replace(self, omega0=s * self.omega0, omega=s * self.omega, lam=s * self.lam)

    def __repr__(self) -> str:
        return (
            f"<ModelParams(omega0={self.omega0:g}, omega={self.omega:g}, "
            f"lam={self.lam:g}, drive={self.drive.value})>"
        )


@dataclass(frozen=True)
class TwoLevelState:
    """Amplitudes <up|psi> and <down|psi>."""

    c_up: complex = 1.0 + 0j
    c_down: complex = 0j

    @classmethod
    def up(cls) -> TwoLevelState:
        return cls(1.0 + 0j, 0j)

    @classmethod
    def down(cls) -> TwoLevelState:
        return cls(0j, 1.0 + 0j)

    @classmethod
    def from_array(cls, psi: npt.ArrayLike) -> TwoLevelState:
        vec = np.asarray(psi, dtype=np.complex128).reshape(2)
        return cls(complex(vec[0]), complex(vec[1]))

    def as_array(self) -> npt.NDArray[np.complex128]:
        return np.array([self.c_up, self.c_down], dtype=np.complex128)

    @property
    def occ_up(self) -> float:
        return abs(self.c_up) ** 2

    @property
    def occ_down(self) -> float:
        return abs(self.c_down) ** 2

    @property
    def norm_sq(self) -> float:
        """Total occupation |c_up|^2 + |c_down|^2."""
        return self.occ_up + self.occ_down


@dataclass(frozen=True)
class Quasienergy:
    """
    Floquet exponent eps with Re(eps) reduced into [0, omega).

    Amplitudes evolve as exp(-i eps t), so Im(eps) > 0 is exponential growth
    at rate Im(eps).
    """

    re: float
    im: float
    omega: float

    @classmethod
    def from_complex(cls, eps: complex, omega: float) -> Quasienergy:
        re = math.fmod(eps.real, omega)
        if re < 0:
            re += omega
        # fmod can land exactly on omega after the shift for tiny negative inputs
        if re >= omega:
            re -= omega
        return cls(re=re, im=eps.imag, omega=omega)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def distance(self, other: Quasienergy | complex) -> float:
        """Distance on the quasienergy circle: real parts compared modulo omega."""
        other_eps = other.value if isinstance(other, Quasienergy) else complex(other)
        d_re = math.remainder(self.re - other_eps.real, self.omega)
        return math.hypot(d_re, self.im - other_eps.imag)


def det2(m: Mat2C) -> complex:
    """Determinant of a 2x2 matrix from its entries."""
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def trace2(m: Mat2C) -> complex:
    """Trace of a 2x2 matrix from its entries."""
    return complex(m[0, 0] + m[1, 1])


def hamiltonian_at(p: ModelParams, t: float) -> Mat2C:
    """
    Evaluate H(t) = (omega0/2) sigma_z + g * 2 lambda cos(omega t) sigma_x.

    The result is exactly traceless and exactly T-periodic in t.

    Example:
        >>> p = ModelParams(omega0=1, omega=1, lam=0.1)
        >>> hamiltonian_at(p, 0.0)
        array([[ 0.5+0.j ,  0. +0.2j],
               [ 0. +0.2j, -0.5+0.j ]])
    """
    # reduced phase keeps cos accurate for long integration times
    phase = math.fmod(p.omega * t, 2.0 * math.pi)
    drive = 2.0 * p.coupling * math.cos(phase)
    return 0.5 * p.omega0 * SIGMA_Z + drive * SIGMA_X
