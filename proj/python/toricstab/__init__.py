"""Exact slope stability of equivariant sheaves on toric varieties.

Thin wrapper over the C++ core; structured inputs and outputs are JSON
(dicts on the way out, JSON strings on the way in) with rationals encoded
as strings "p/q" so nothing ever touches floating point.
"""

from toricstab._core import (
    ToricError,
    adiabatic,
    blowup,
    curve_criterion,
    degree,
    fixture,
    fixture_names,
    intersection_number,
    is_ample,
    is_complete,
    is_smooth,
    pullback_blowup,
    slope,
    stability,
    tangent_sheaf,
    validate_fan,
)

__all__ = [
    "ToricError",
    "adiabatic",
    "blowup",
    "curve_criterion",
    "degree",
    "fixture",
    "fixture_names",
    "intersection_number",
    "is_ample",
    "is_complete",
    "is_smooth",
    "pullback_blowup",
    "slope",
    "stability",
    "tangent_sheaf",
    "validate_fan",
]
