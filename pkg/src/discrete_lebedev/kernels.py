"""Inversion kernels of the two discrete transform families and the three
closed-form projection identities their theory rests on.

The oscillatory kernels are

    phi_n(x) = x * integral_{-pi}^{pi} K_0(x*cosh(u)) * sinh(2u) * sin(n*u) du
    psi_n(x) = integral_{-pi}^{pi} [2/pi + x*cosh(u)*M_0(x*cosh(u))]
                                  * sinh(u) * sin(n*u) du

both computed as twice the half-range integral (the parity of the
non-sine factor is odd, which the tests verify rather than assume).
Each projection identity is exposed with a numeric side and its closed
form so the verification suites can play them against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    integrate_abel_lower,
    integrate_abel_upper,
    integrate_periodic_oscillatory,
    integrate_semi_infinite,
)
from .special_functions import macdonald_k_imag, struve_bracket

__all__ = [
    "KernelEvaluation",
    "phi_kernel",
    "psi_kernel",
    "laplace_macdonald_closed",
    "laplace_macdonald_numeric",
    "k0_halfline_projection",
    "k0_halfline_projection_closed",
    "struve_abel_projection",
    "struve_abel_projection_closed",
]


@dataclass(frozen=True)
class KernelEvaluation:
    """One kernel value with its index, argument, and quadrature error."""

    n: int
    x: float
    value: float
    error_estimate: float
    converged: bool = True

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"kernel value must be finite, got {self.value!r}")
        if not (math.isfinite(self.error_estimate) and self.error_estimate >= 0):
            raise ValueError(
                f"error estimate must be finite and >= 0, got {self.error_estimate!r}"
            )


def _check_point(n: int, x: float) -> tuple[int, float]:
    if n != int(n) or n < 1:
        raise ValueError(f"index n must be a positive integer, got {n!r}")
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise ValueError(f"x must be finite and strictly positive, got {x!r}")
    return int(n), x


@lru_cache(maxsize=1 << 16)
def phi_kernel(
    n: int, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> KernelEvaluation:
    """Product-family inversion kernel phi_n(x).

    Cached per (n, x, cfg); the underlying Macdonald evaluations carry their
    own cache, so sweeps over n at fixed x reuse the K_0 values on shared
    panel nodes.
    """
    n, x = _check_point(n, x)
    inner = cfg.tightened()

    def envelope(u: float) -> float:
        return macdonald_k_imag(0.0, x * math.cosh(u), inner) * math.sinh(2.0 * u)

    res = integrate_periodic_oscillatory(envelope, n, cfg, parity="odd")
    return KernelEvaluation(
        n, x, x * res.value, x * res.error_estimate, res.converged
    )


@lru_cache(maxsize=1 << 16)
def psi_kernel(
    n: int, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> KernelEvaluation:
    """Squared-family inversion kernel psi_n(x)."""
    n, x = _check_point(n, x)
    inner = cfg.tightened()

    def envelope(u: float) -> float:
        return struve_bracket(x * math.cosh(u), inner) * math.sinh(u)

    res = integrate_periodic_oscillatory(envelope, n, cfg, parity="odd")
    return KernelEvaluation(n, x, res.value, res.error_estimate, res.converged)


def laplace_macdonald_closed(n: int, u: float) -> float:
    """Closed form pi*sin(n*u) / (sinh(u)*sinh(pi*n)) on [-pi, pi].

    The removable 0/0 at u = 0 is patched by the limit pi*n/sinh(pi*n); for
    |u| < 1e-4 the ratio sin(n*u)/sinh(u) is evaluated by a series ratio
    (numerator and denominator both vanish linearly).
    """
    if n != int(n) or n < 1:
        raise ValueError(f"index n must be a positive integer, got {n!r}")
    n = int(n)
    u = float(u)
    if not (abs(u) <= math.pi):
        raise ValueError(f"u must lie in [-pi, pi], got {u!r}")
    if abs(u) < 1e-4:
        nu2 = (n * u) ** 2
        u2 = u * u
        num = n * (1.0 - nu2 / 6.0 + nu2 * nu2 / 120.0)
        den = 1.0 + u2 / 6.0 + u2 * u2 / 120.0
        ratio = num / den
    else:
        ratio = math.sin(n * u) / math.sinh(u)
    return math.pi * ratio / math.sinh(math.pi * n)


def laplace_macdonald_numeric(
    n: int, u: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Laplace transform of K_{i*n} at the point cosh(u),

        integral_0^inf exp(-x*cosh(u)) * K_{i*n}(x) dx,

    which the closed form above reproduces.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"index n must be a positive integer, got {n!r}")
    u = float(u)
    if not (abs(u) <= math.pi):
        raise ValueError(f"u must lie in [-pi, pi], got {u!r}")
    ch = math.cosh(u)
    inner = cfg.tightened()

    def integrand(x: float) -> float:
        return math.exp(-x * ch) * macdonald_k_imag(float(n), x, inner)

    return integrate_semi_infinite(integrand, 0.0, cfg).require_converged(
        f"laplace_macdonald_numeric(n={n}, u={u!r})"
    ).value


def k0_halfline_projection(
    t: float, u: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Numeric side of the half-line Macdonald projection

        integral_t^inf x*K_0(x*cosh(u)) / sqrt(x^2 - t^2) dx
            = pi*exp(-t*cosh(u)) / (2*cosh(u)).
    """
    t = float(t)
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be finite and strictly positive, got {t!r}")
    ch = math.cosh(float(u))
    inner = cfg.tightened()

    def weighted(s: float) -> float:
        return s * macdonald_k_imag(0.0, s * ch, inner)

    return integrate_abel_upper(weighted, t, cfg).require_converged(
        f"k0_halfline_projection(t={t!r}, u={u!r})"
    ).value


def k0_halfline_projection_closed(t: float, u: float) -> float:
    """Closed side of the half-line Macdonald projection."""
    ch = math.cosh(float(u))
    return math.pi * math.exp(-float(t) * ch) / (2.0 * ch)


def struve_abel_projection(
    t: float, u: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Numeric side of the Struve-bracket projection

        integral_0^t [2/pi + x*cosh(u)*M_0(x*cosh(u))] / sqrt(t^2 - x^2) dx
            = exp(-t*cosh(u)).
    """
    t = float(t)
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be finite and strictly positive, got {t!r}")
    ch = math.cosh(float(u))
    inner = cfg.tightened()

    def bracket(s: float) -> float:
        return struve_bracket(s * ch, inner)

    return integrate_abel_lower(bracket, t, cfg).require_converged(
        f"struve_abel_projection(t={t!r}, u={u!r})"
    ).value


def struve_abel_projection_closed(t: float, u: float) -> float:
    """Closed side of the Struve-bracket projection."""
    return math.exp(-float(t) * math.cosh(float(u)))
