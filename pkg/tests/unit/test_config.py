"""Unit tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from ptfloquet.config import Settings
from ptfloquet.dynamics.propagator import IntegratorConfig


def test_defaults():
    settings = Settings(_env_file=None)
    assert settings.rel_tol == 1e-10
    assert settings.abs_tol == 1e-12
    assert settings.ode_method == "RK45"
    assert settings.threshold == 1e-8
    assert settings.threads == 1


def test_environment_override(monkeypatch):
    monkeypatch.setenv("PTFLOQUET_REL_TOL", "1e-11")
    monkeypatch.setenv("PTFLOQUET_ODE_METHOD", "dop853")
    monkeypatch.setenv("PTFLOQUET_THREADS", "4")
    settings = Settings(_env_file=None)
    assert settings.rel_tol == 1e-11
    assert settings.ode_method == "DOP853"
    assert settings.threads == 4


def test_log_settings_normalised():
    settings = Settings(_env_file=None, log_level="debug", log_format="JSON")
    assert settings.log_level == "DEBUG"
    assert settings.log_format == "json"


@pytest.mark.parametrize(
    "field,value",
    [
        ("ode_method", "LSODA"),
        ("log_level", "verbose"),
        ("log_format", "xml"),
        ("max_step_fraction", 0.1),
        ("rel_tol", 0.0),
        ("truncation", 1),
    ],
)
def test_invalid_values_rejected(field, value):
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **{field: value})


def test_integrator_from_settings():
    settings = Settings(_env_file=None, rel_tol=1e-11, abs_tol=1e-13, ode_method="DOP853")
    cfg = IntegratorConfig.from_settings(settings)
    assert cfg.rel_tol == 1e-11
    assert cfg.abs_tol == 1e-13
    assert cfg.method == "DOP853"
    assert cfg.max_step_fraction == 0.05
