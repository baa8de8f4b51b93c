"""Coupled NLS solver: Krogstad-P22 and IFRK4-P13 on Fourier-spectral grids."""

import json

from ._core import (
    ConfigError,
    DivergenceError,
    PoleError,
    __version__,
    amplification,
    amplification_closed_form,
    axis,
    convergence_order,
    converge_time,
    forward,
    inverse,
    r13,
    r22,
    simulate,
    stability_region,
)


def run(config, **overrides):
    """simulate() on a dict config; keyword arguments replace top-level keys."""
    merged = dict(config)
    merged.update(overrides)
    return simulate(json.dumps(merged))


__all__ = [
    "ConfigError",
    "DivergenceError",
    "PoleError",
    "__version__",
    "amplification",
    "amplification_closed_form",
    "axis",
    "convergence_order",
    "converge_time",
    "forward",
    "inverse",
    "r13",
    "r22",
    "run",
    "simulate",
    "stability_region",
]
