"""
Truncated Floquet matrix, its spectrum, the parity decomposition and the
effective two-level reduction.
"""

from ptfloquet.floquet.matrix import (
    FloquetMatrix,
    ParityChain,
    Spin,
    build_floquet,
    central_quasienergies,
    dump_matrix,
    floquet_quasienergies,
    interior_mask,
    parity_chains,
    scan_quasienergies,
    scan_truncation,
    spectrum,
    wannier_stark_chain,
)
from ptfloquet.floquet.salwen import EffectiveTwoLevel, salwen_effective

__all__ = [
    "FloquetMatrix",
    "ParityChain",
    "Spin",
    "build_floquet",
    "central_quasienergies",
    "dump_matrix",
    "floquet_quasienergies",
    "interior_mask",
    "parity_chains",
    "scan_quasienergies",
    "scan_truncation",
    "spectrum",
    "wannier_stark_chain",
    "EffectiveTwoLevel",
    "salwen_effective",
]
