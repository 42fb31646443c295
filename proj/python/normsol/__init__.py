"""Normalized solutions of -Delta u = lambda u + f(u) with prescribed L2 norm."""

from ._core import (
    ConfigError,
    GeometryError,
    Grid,
    Model,
    check,
    config_keys,
    energy,
    energy_report,
    grad_norm_sq,
    mass,
    pohozaev,
    sobolev_constant,
    solve,
    sweep,
)

__all__ = [
    "ConfigError",
    "GeometryError",
    "Grid",
    "Model",
    "check",
    "config_keys",
    "energy",
    "energy_report",
    "grad_norm_sq",
    "mass",
    "pohozaev",
    "sobolev_constant",
    "solve",
    "sweep",
]
