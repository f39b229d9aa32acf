"""
Closed-form predictors: boundaries, level shifts, window widths and growth
rates for the Hermitian and the imaginary drive.
"""

from ptfloquet.perturbation.limits import (
    high_freq_boundary,
    high_freq_shift,
    low_freq_threshold,
    static_quasienergies,
    wannier_stark_state,
)
from ptfloquet.perturbation.multiphoton import (
    EffectiveParams,
    ResonanceOrder,
    RoughWindow,
    effective_hamiltonian_multiphoton,
    multiphoton_delta_u,
    multiphoton_line,
    multiphoton_line_inverse,
    multiphoton_rabi_freq_sq,
    window_rough,
)
from ptfloquet.perturbation.single_photon import (
    ExpansionOrder,
    bloch_siegert,
    effective_hamiltonian_single,
    hermitian_resonance_oracle,
    perturbative_quasienergies,
    rabi_freq_sq,
    single_photon_boundary,
)
from ptfloquet.perturbation.three_photon import (
    ScaledCoords,
    three_photon_boundary,
    three_photon_quasienergy,
    three_photon_shifts,
    three_photon_window_delta,
)

__all__ = [
    "high_freq_boundary",
    "high_freq_shift",
    "low_freq_threshold",
    "static_quasienergies",
    "wannier_stark_state",
    "EffectiveParams",
    "ResonanceOrder",
    "RoughWindow",
    "effective_hamiltonian_multiphoton",
    "multiphoton_delta_u",
    "multiphoton_line",
    "multiphoton_line_inverse",
    "multiphoton_rabi_freq_sq",
    "window_rough",
    "ExpansionOrder",
    "bloch_siegert",
    "effective_hamiltonian_single",
    "hermitian_resonance_oracle",
    "perturbative_quasienergies",
    "rabi_freq_sq",
    "single_photon_boundary",
    "ScaledCoords",
    "three_photon_boundary",
    "three_photon_quasienergy",
    "three_photon_shifts",
    "three_photon_window_delta",
]
