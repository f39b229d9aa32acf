"""
Pytest configuration and fixtures.

This file is automatically loaded by pytest and provides
shared fixtures for all tests. Units are omega0 = 1 throughout.
"""

import pytest

from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.dynamics.propagator import IntegratorConfig


@pytest.fixture
def integrator():
    """Default integrator tolerances (rel 1e-10, abs 1e-12, RK45)."""
    return IntegratorConfig()


@pytest.fixture
def make_params():
    """
    Factory for ModelParams with omega0 = 1.

    Usage: make_params(omega=0.9, lam=0.1, drive="hermitian")
    """

    def _make(
        omega: float = 1.0,
        lam: float = 0.0,
        drive: DriveType | str = DriveType.ANTI_HERMITIAN,
        omega0: float = 1.0,
    ) -> ModelParams:
        return ModelParams(omega0=omega0, omega=omega, lam=lam, drive=DriveType.parse(drive))

    return _make


@pytest.fixture
def resonant_anti(make_params):
    """Imaginary drive exactly on the single-photon resonance, lambda = 0.1."""
    return make_params(omega=1.0, lam=0.1)
