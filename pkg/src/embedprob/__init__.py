"""Embedding problems with elementary p-abelian kernel over Z/p^n Z.

Submodule lattices of F_p[G]-modules, extension groups, synthetic
parameterizing environments, closed-form counts and a brute-force oracle.
"""

from __future__ import annotations

from .counting import (
    AmbientProfile,
    auto_realize,
    count_flags,
    count_in_ambient,
    count_in_env,
    headline_count,
    multiplicity_bound,
    p_binom,
    solvable,
    solvable_coarse,
)
from .environment import INF, Environment, EnvironmentSpec, build_env, lambda_of, parse_env
from .extensions import CanonicalExtension, ExtensionGroup, ExtensionSpec, canonicalize, iso_types
from .fpg_algebra import Module, Submodule, decompose, span
from .shapes import CapExceeded, ModuleShape, PrimePower, ValidationError, parse_shape, render_shape

__version__ = "0.1.0"

__all__ = [
    "INF",
    "AmbientProfile",
    "CanonicalExtension",
    "CapExceeded",
    "Environment",
    "EnvironmentSpec",
    "ExtensionGroup",
    "ExtensionSpec",
    "Module",
    "ModuleShape",
    "PrimePower",
    "Submodule",
    "ValidationError",
    "auto_realize",
    "build_env",
    "canonicalize",
    "count_flags",
    "count_in_ambient",
    "count_in_env",
    "decompose",
    "headline_count",
    "iso_types",
    "lambda_of",
    "multiplicity_bound",
    "p_binom",
    "parse_env",
    "parse_shape",
    "render_shape",
    "solvable",
    "solvable_coarse",
    "span",
]
