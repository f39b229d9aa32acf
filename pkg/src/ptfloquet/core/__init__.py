"""
Core domain types for the driven non-Hermitian Rabi model.

- ModelParams / DriveType: the physical parameters (omega0, omega, lambda)
- TwoLevelState, Quasienergy, Mat2C: values passed between modules
- hamiltonian_at: the model Hamiltonian at time t
- errors: the exception hierarchy and the NO_WINDOW sentinel
"""

from ptfloquet.core.constants import SIGMA_X, SIGMA_Z
from ptfloquet.core.errors import (
    NO_WINDOW,
    DomainError,
    DomainExceeded,
    NoConvergence,
    NotConverged,
    NotGrowing,
    NoWindow,
    NumericalFailure,
    PTFloquetError,
    ResolutionTooCoarse,
    SmallDenominator,
    StepSizeUnderflow,
)
from ptfloquet.core.model import (
    DriveType,
    Mat2C,
    ModelParams,
    PhaseLabel,
    Quasienergy,
    TwoLevelState,
    det2,
    hamiltonian_at,
    trace2,
)

__all__ = [
    "SIGMA_X",
    "SIGMA_Z",
    "NO_WINDOW",
    "DomainError",
    "DomainExceeded",
    "NoConvergence",
    "NotConverged",
    "NotGrowing",
    "NoWindow",
    "NumericalFailure",
    "PTFloquetError",
    "ResolutionTooCoarse",
    "SmallDenominator",
    "StepSizeUnderflow",
    "DriveType",
    "Mat2C",
    "ModelParams",
    "PhaseLabel",
    "Quasienergy",
    "TwoLevelState",
    "det2",
    "hamiltonian_at",
    "trace2",
]
