"""Polaritons of a quadratically coupled light-medium pair, and what they
do to photon transfer, dark-state storage, and probe absorption.

The analytic layer (hopfield, transfer, eit_dark, optics) carries the
closed-form physics; fockspace provides the numerically exact dense-matrix
counterpart every analytic claim is tested against.
"""

from .errors import (
    DegenerateDark,
    IndexOutOfRange,
    NoWindowFound,
    NotConverged,
    NotHermitian,
    PolaritonError,
    ScheduleNotMonotone,
    ShapeMismatch,
    SingularResponse,
    StabilityViolation,
    StepUnderflow,
)
from .hopfield import (
    LightMediumParams,
    PolaritonBasis,
    PolaritonMode,
    canonical_residual,
    diagonalize,
    eigenfrequencies,
)

__all__ = [
    "PolaritonError",
    "StabilityViolation",
    "IndexOutOfRange",
    "NotHermitian",
    "ShapeMismatch",
    "StepUnderflow",
    "DegenerateDark",
    "ScheduleNotMonotone",
    "SingularResponse",
    "NotConverged",
    "NoWindowFound",
    "LightMediumParams",
    "PolaritonMode",
    "PolaritonBasis",
    "eigenfrequencies",
    "diagonalize",
    "canonical_residual",
]

__version__ = "0.1.0"
