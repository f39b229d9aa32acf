"""
Numerical constants and default tolerances.

Units: hbar = 1 and, unless a caller says otherwise, omega0 = 1. Every
frequency, drive strength and quasienergy in the package is then measured
in units of the level splitting.

The phase boundary is resolved by Im(eps) at the 1e-8 level; integrator noise
in |mu| has to stay well below that.
"""

import numpy as np

# Pauli matrices in the (|up>, |down>) basis
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Default working unit for the level splitting
DEFAULT_OMEGA0 = 1.0

# Defaults for the adaptive Runge-Kutta integrator
# rel_tol / abs_tol: local error control of the 5(4) embedded pair
# max_step_fraction: largest step as a fraction of the drive period
INTEGRATOR_DEFAULTS = {
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "max_step_fraction": 0.05,
    "method": "RK45",
}

# Tightened tolerances for the narrowest multi-photon windows (n = 3)
TIGHT_INTEGRATOR = {
    "rel_tol": 1e-13,
    "abs_tol": 1e-15,
    "max_step_fraction": 0.05,
    "method": "DOP853",
}

# Classification of PT-symmetric vs PT-broken points
# threshold: max Im(eps) above which a point counts as broken (units of omega0)
# tight_threshold: used together with TIGHT_INTEGRATOR
CLASSIFY_DEFAULTS = {
    "threshold": 1e-8,
    "tight_threshold": 1e-9,
}

# Truncated Floquet matrix
# truncation: Fourier half-width N (blocks n = -N..N)
# scan_truncation: cheaper N usable when lambda <= 0.1 omega0
# convergence_drop: compare N against N - convergence_drop
# convergence_tol: allowed discrepancy of the central pair between the two
FLOQUET_DEFAULTS = {
    "truncation": 30,
    "scan_truncation": 15,
    "convergence_drop": 4,
    "convergence_tol": 1e-8,
}

# Self-consistent effective two-level reduction
SALWEN_DEFAULTS = {
    "max_iter": 100,
    "eps_tol": 1e-12,
    "min_gap_fraction": 0.01,  # intermediate states closer than omega/100 are rejected
}

# Bessel evaluation
# series_switch: |x| above which Miller's downward recurrence replaces the power series
# max_order / max_arg: supported domain
BESSEL_DEFAULTS = {
    "series_switch": 12.0,
    "max_order": 200,
    "max_arg": 50.0,
}

# Boundary and window scans
SCAN_DEFAULTS = {
    "grid_points": 60,
    "min_grid_points": 50,
    "boundary_tol": 1e-5,
    "locate_points": 61,
    "edge_points": 21,
    "edge_span_widths": 2.0,
}
