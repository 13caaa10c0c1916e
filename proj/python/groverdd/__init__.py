"""Grover search with dynamical-decoupling insertion on a noisy simulator."""

from ._core import (
    ConfigError,
    InputError,
    IntegrityError,
    catalog,
    ideal_success,
    load_calibration,
    optimal_iterations,
    run_experiment,
    sequence_phases,
    success_threshold,
    wilson_ci,
)

__all__ = [
    "ConfigError",
    "InputError",
    "IntegrityError",
    "catalog",
    "ideal_success",
    "load_calibration",
    "optimal_iterations",
    "run_experiment",
    "sequence_phases",
    "success_threshold",
    "wilson_ci",
]
