"""
ptfloquet - PT phase diagrams of the periodically driven two-level model.

Numerically exact quasienergies (monodromy matrix, truncated Floquet
matrix), closed-form perturbative boundaries, and scans that trace the
PT-symmetric and PT-broken phases.
"""

__version__ = "1.0.0"
