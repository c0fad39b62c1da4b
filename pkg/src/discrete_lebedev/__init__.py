"""Discrete Lebedev index transforms.

Forward coefficient extraction, series synthesis, and series inversion for
the two discrete transform families built on Macdonald functions of
imaginary order, together with the special-function kernels and the
adaptive quadrature engine they require.
"""

from .quadrature import (
    DEFAULT_CONFIG,
    InvalidIntervalError,
    NonConvergenceError,
    NonFiniteEvaluationError,
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
    TailNotDecayingError,
    integrate_abel_lower,
    integrate_abel_upper,
    integrate_finite,
    integrate_periodic_oscillatory,
    integrate_semi_infinite,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "InvalidIntervalError",
    "NonConvergenceError",
    "NonFiniteEvaluationError",
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "TailNotDecayingError",
    "integrate_abel_lower",
    "integrate_abel_upper",
    "integrate_finite",
    "integrate_periodic_oscillatory",
    "integrate_semi_infinite",
    "__version__",
]
