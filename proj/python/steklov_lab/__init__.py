"""Steklov eigenvalue experiments: collar mode solver, 2D finite elements and
certified bounds along conformal and Bleecker families."""

import json as _json

from . import _core
from ._core import (
    BleeckerRamp,
    ConfigError,
    ConformalBump,
    ConformalStep,
    DomainError,
    IoError,
    NumericError,
    ResourceError,
    berger_mu,
    berger_oracle,
    collar_spectrum,
    cylinder_spectrum,
    disk_spectrum,
    dtn_value,
    lambda2_bleecker,
    mode_eigenvalues,
    preset_names,
    run_scenario,
    sweep,
    sweep_csv,
    validate,
)


def preset(name):
    """Scenario configuration of a named preset, as a dict."""
    return _json.loads(_core.preset(name))


def _config_text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def run(config, epsilon=None):
    """Rows of a scenario at one epsilon (default: first of its sweep)."""
    return run_scenario(_config_text(config), epsilon)


def run_sweep(config):
    """Rows of a scenario over its epsilon grid."""
    return sweep(_config_text(config))


def certificate_fixed_volume(epsilon, delta):
    return _json.loads(_core.certificate_fixed_volume(epsilon, delta))


def certificate_mixed(epsilon, lambda_next, b, collar_length, neumann_gap=0.0, component_volumes=()):
    return _json.loads(
        _core.certificate_mixed(epsilon, lambda_next, b, collar_length, neumann_gap, list(component_volumes))
    )


def quasi_isometry(trials=20, refinement=2, k=10, seed=1, max_ratio=2.0):
    return _json.loads(_core.quasi_isometry(trials, refinement, k, seed, max_ratio))


__all__ = [
    "BleeckerRamp",
    "ConfigError",
    "ConformalBump",
    "ConformalStep",
    "DomainError",
    "IoError",
    "NumericError",
    "ResourceError",
    "berger_mu",
    "berger_oracle",
    "certificate_fixed_volume",
    "certificate_mixed",
    "collar_spectrum",
    "cylinder_spectrum",
    "disk_spectrum",
    "dtn_value",
    "lambda2_bleecker",
    "mode_eigenvalues",
    "preset",
    "preset_names",
    "quasi_isometry",
    "run",
    "run_sweep",
    "sweep_csv",
    "validate",
]
