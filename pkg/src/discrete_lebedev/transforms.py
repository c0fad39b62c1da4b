"""The four discrete transforms and their inverses.

A 2*pi-periodic Lipschitz profile generates test functions through two
integral representations (one per kernel family); the same profile yields
closed-form transform coefficients through its sine integrals.  The module
provides

* profile-generated functions     (``build_f_from_profile_a`` / ``_b``)
* coefficient extraction          (``coefficients_from_profile``,
                                   ``forward_a`` / ``forward_b``)
* series inversion of coefficients (``invert_a`` / ``invert_b``)
* series synthesis from sequences (``synthesize_a`` / ``synthesize_b``)
* integral analysis of functions  (``analyze_a`` / ``analyze_b``)
* an end-to-end round trip report (``roundtrip_report``)

Family tags are enforced everywhere: the two transform families share the
coefficient algebra but not their kernels, and silently mixing them would
"work" numerically while being wrong.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .quadrature import (
    DEFAULT_CONFIG,
    NonConvergenceError,
    QuadratureConfig,
    QuadratureResult,
    integrate_finite,
    integrate_periodic_oscillatory,
    integrate_semi_infinite,
)
from .special_functions import (
    KernelFamily,
    product_kernel_fast,
    squared_kernel_eval,
    macdonald_k_imag,
    struve_bracket,
)
from .kernels import KernelEvaluation, phi_kernel, psi_kernel

__all__ = [
    "PeriodicProfile",
    "CoefficientSequence",
    "ReconstructionReport",
    "SummabilityViolationError",
    "TailWarning",
    "fourier_profile",
    "builtin_profile",
    "sampled_profile",
    "BUILTIN_PROFILES",
    "build_f_from_profile_a",
    "build_f_from_profile_b",
    "coefficient_eval",
    "coefficients_from_profile",
    "forward_a",
    "forward_b",
    "invert_a",
    "invert_b",
    "synthesize_a",
    "synthesize_b",
    "analyze_a",
    "analyze_b",
    "roundtrip_report",
]

_PI = math.pi
_TWO_PI = 2.0 * math.pi


class SummabilityViolationError(ValueError):
    """Raised when a coefficient prefix fails its family's summability probe."""


class TailWarning(UserWarning):
    """Emitted when the last retained series term is not yet negligible."""


@dataclass(frozen=True, eq=False)
class PeriodicProfile:
    """A 2*pi-periodic Lipschitz generator of analytic test cases.

    ``parity`` is an evaluation hint about psi itself ("odd", "even" or
    "none"); the quadrature layer uses it to halve symmetric ranges or
    short-circuit integrals the symmetry kills.  Hash/equality are by
    identity, which makes profiles usable as cache keys.
    """

    psi: Callable[[float], float]
    lipschitz_bound: float
    label: str = ""
    parity: str = "none"

    def __post_init__(self):
        if not (self.lipschitz_bound > 0 and math.isfinite(self.lipschitz_bound)):
            raise ValueError(
                f"lipschitz_bound must be finite and positive, got {self.lipschitz_bound!r}"
            )
        if self.parity not in ("none", "odd", "even"):
            raise ValueError(f"parity must be 'none', 'odd' or 'even', got {self.parity!r}")

    def lipschitz_excess(self, rng: random.Random, pairs: int = 256) -> float:
        """Statistical check of |psi(u)-psi(v)| <= C|u-v| on random pairs.

        Returns the largest observed ratio of difference quotient to the
        stored bound; values <= 1 (up to rounding) mean the bound holds.
        """
        worst = 0.0
        for _ in range(pairs):
            u = rng.uniform(-_PI, _PI)
            v = rng.uniform(-_PI, _PI)
            if u == v:
                continue
            ratio = abs(self.psi(u) - self.psi(v)) / (
                self.lipschitz_bound * abs(u - v)
            )
            if ratio > worst:
                worst = ratio
        return worst

    def periodicity_defect(self, grid_size: int = 64) -> float:
        """max |psi(u + 2*pi) - psi(u)| over a probe grid in [-pi, pi]."""
        worst = 0.0
        for i in range(grid_size):
            u = -_PI + (i + 0.5) * _TWO_PI / grid_size
            d = abs(self.psi(u + _TWO_PI) - self.psi(u))
            if d > worst:
                worst = d
        return worst


def fourier_profile(coeffs: Sequence[float], label: str = "") -> PeriodicProfile:
    """psi(u) = sum_k b_k sin(k*u) from the sine-coefficient list b_1..b_K."""
    bs = tuple(float(b) for b in coeffs)
    if not bs:
        raise ValueError("at least one sine coefficient is required")

    def psi(u: float) -> float:
        return sum(b * math.sin(k * u) for k, b in enumerate(bs, start=1))

    bound = sum(k * abs(b) for k, b in enumerate(bs, start=1))
    if bound == 0.0:
        bound = 1.0
    if not label:
        label = "fourier[" + ",".join(repr(b) for b in bs) + "]"
    return PeriodicProfile(psi, bound, label, parity="odd")


def _wrap(u: float) -> float:
    """Reduce to the principal period (-pi, pi]."""
    return math.remainder(u, _TWO_PI)


def builtin_profile(name: str, amplitude: float = 1.0) -> PeriodicProfile:
    """Named profiles with closed-form coefficient oracles.

    ``sin``       amplitude * sin(u)
    ``cos``       amplitude * cos(u)        (even; annihilated by parity)
    ``sawtooth``  amplitude * u on (-pi, pi], periodized
    ``zero``      identically zero
    """
    amplitude = float(amplitude)
    a = amplitude
    if name == "sin":
        return PeriodicProfile(
            lambda u: a * math.sin(u), max(abs(a), 1e-12), f"sin*{a!r}", parity="odd"
        )
    if name == "cos":
        return PeriodicProfile(
            lambda u: a * math.cos(u), max(abs(a), 1e-12), f"cos*{a!r}", parity="even"
        )
    if name == "sawtooth":
        return PeriodicProfile(
            lambda u: a * _wrap(u), max(abs(a), 1e-12), f"sawtooth*{a!r}", parity="odd"
        )
    if name == "zero":
        return PeriodicProfile(lambda u: 0.0, 1e-12, "zero", parity="odd")
    raise ValueError(f"unknown builtin profile {name!r}")


BUILTIN_PROFILES = ("sin", "cos", "sawtooth", "zero")


def sampled_profile(
    u_samples: Sequence[float], psi_samples: Sequence[float], label: str = "sampled"
) -> PeriodicProfile:
    """Periodized linear interpolant through (u, psi) samples on [-pi, pi].

    Requires at least 8 strictly increasing sample points spanning the
    period; the Lipschitz bound is the largest sample slope (including the
    wrap-around segment).
    """
    us = np.asarray(u_samples, dtype=float)
    vs = np.asarray(psi_samples, dtype=float)
    if us.ndim != 1 or us.shape != vs.shape:
        raise ValueError("u and psi samples must be 1-d arrays of equal length")
    if us.size < 8:
        raise ValueError(f"need at least 8 samples, got {us.size}")
    if np.any(np.diff(us) <= 0):
        raise ValueError("u samples must be strictly increasing")
    if us[0] < -_PI - 1e-9 or us[-1] > _PI + 1e-9:
        raise ValueError("u samples must lie in [-pi, pi]")
    if us[-1] - us[0] < _TWO_PI - 0.5:
        raise ValueError("samples must span the period [-pi, pi]")

    slopes = np.abs(np.diff(vs) / np.diff(us))
    gap = (us[0] + _TWO_PI) - us[-1]
    if gap > 1e-12:
        slopes = np.append(slopes, abs(vs[0] - vs[-1]) / gap)
    bound = float(np.max(slopes)) if slopes.size else 1e-12
    if bound == 0.0:
        bound = 1e-12

    def psi(u: float) -> float:
        return float(np.interp(u, us, vs, period=_TWO_PI))

    return PeriodicProfile(psi, bound, label, parity="none")


@dataclass(frozen=True)
class CoefficientSequence:
    """Finite prefix a_1..a_N of a transform-coefficient sequence."""

    family: KernelFamily
    values: tuple[float, ...]
    n_max: int

    def __post_init__(self):
        if not isinstance(self.family, KernelFamily):
            raise ValueError(f"family must be a KernelFamily, got {self.family!r}")
        if self.n_max < 1 or self.n_max != len(self.values):
            raise ValueError(
                f"n_max must equal the number of stored coefficients "
                f"({self.n_max!r} vs {len(self.values)})"
            )
        for v in self.values:
            if not math.isfinite(v):
                raise ValueError(f"coefficients must be finite, got {v!r}")

    @classmethod
    def from_values(
        cls, family: KernelFamily, values: Iterable[float]
    ) -> "CoefficientSequence":
        vals = tuple(float(v) for v in values)
        return cls(family, vals, len(vals))

    def weighted_terms(self) -> tuple[float, ...]:
        """|a_n| times the family's summability weight."""
        if self.family is KernelFamily.PRODUCT:
            return tuple(
                abs(a) * math.exp(-0.5 * _PI * n)
                for n, a in enumerate(self.values, start=1)
            )
        return tuple(abs(a) for a in self.values)


def _check_summability(seq: CoefficientSequence) -> None:
    """Probe the family's summability condition on the stored prefix.

    A finite prefix always has a finite weighted sum; what can be detected
    is a prefix whose weighted terms are still growing at its end, which
    contradicts the convergence the synthesis series requires.
    """
    t = seq.weighted_terms()
    if len(t) >= 3 and t[-1] > t[-2] > t[-3]:
        total = math.fsum(t)
        if t[-1] > 1e-9 * total:
            raise SummabilityViolationError(
                f"weighted coefficient terms still growing at n={seq.n_max} "
                f"for family {seq.family.value!r}"
            )


@dataclass(frozen=True)
class ReconstructionReport:
    """Grid comparison of a reconstruction against its ground truth.

    ``max_rel_error`` is taken over grid points with nonzero truth; it is 0
    when the truth vanishes identically on the grid.
    """

    grid: tuple[float, ...]
    truth: tuple[float, ...]
    reconstructed: tuple[float, ...]
    max_abs_error: float
    max_rel_error: float
    terms_used: int

    @classmethod
    def from_comparison(
        cls,
        grid: Sequence[float],
        truth: Sequence[float],
        reconstructed: Sequence[float],
        terms_used: int,
    ) -> "ReconstructionReport":
        grid = tuple(float(x) for x in grid)
        truth = tuple(float(v) for v in truth)
        reconstructed = tuple(float(v) for v in reconstructed)
        if not (len(grid) == len(truth) == len(reconstructed)) or not grid:
            raise ValueError("grid, truth and reconstruction must share a nonzero length")
        abs_errs = [abs(r - t) for r, t in zip(reconstructed, truth)]
        rel_errs = [
            abs(r - t) / abs(t) for r, t in zip(reconstructed, truth) if t != 0.0
        ]
        return cls(
            grid,
            truth,
            reconstructed,
            max(abs_errs),
            max(rel_errs) if rel_errs else 0.0,
            int(terms_used),
        )

    def to_dict(self) -> dict:
        return {
            "grid": list(self.grid),
            "truth": list(self.truth),
            "reconstructed": list(self.reconstructed),
            "max_abs_error": self.max_abs_error,
            "max_rel_error": self.max_rel_error,
            "terms_used": self.terms_used,
        }


def _require_x(x: float) -> float:
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise ValueError(f"x must be finite and strictly positive, got {x!r}")
    return x


@lru_cache(maxsize=1 << 16)
def _profile_f_a(p: PeriodicProfile, x: float, cfg: QuadratureConfig) -> float:
    inner = cfg.tightened()
    psi = p.psi

    def integrand(u: float) -> float:
        ch = math.cosh(u)
        return (
            macdonald_k_imag(0.0, x * ch, inner) * psi(u) * math.sinh(u) * ch
        )

    if p.parity == "even":
        return 0.0
    if p.parity == "odd":
        res = integrate_finite(integrand, 0.0, _PI, cfg)
        scale = 2.0
    else:
        res = integrate_finite(integrand, -_PI, _PI, cfg)
        scale = 1.0
    res.require_converged(f"build_f_from_profile_a(x={x!r})")
    return (2.0 * x / _PI) * scale * res.value


def build_f_from_profile_a(
    p: PeriodicProfile, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Product-family test function generated by a periodic profile,

        f(x) = (2x/pi) * integral_{-pi}^{pi}
                   K_0(x*cosh(u)) * psi(u)*sinh(u) * cosh(u) du.
    """
    return _profile_f_a(p, _require_x(x), cfg)


@lru_cache(maxsize=1 << 16)
def _profile_f_b(p: PeriodicProfile, x: float, cfg: QuadratureConfig) -> float:
    inner = cfg.tightened()
    psi = p.psi

    def integrand(u: float) -> float:
        return struve_bracket(x * math.cosh(u), inner) * psi(u) * math.sinh(u)

    if p.parity == "even":
        return 0.0
    if p.parity == "odd":
        res = integrate_finite(integrand, 0.0, _PI, cfg)
        scale = 2.0
    else:
        res = integrate_finite(integrand, -_PI, _PI, cfg)
        scale = 1.0
    res.require_converged(f"build_f_from_profile_b(x={x!r})")
    return scale * res.value


def build_f_from_profile_b(
    p: PeriodicProfile, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Squared-family test function generated by a periodic profile,

        f(x) = integral_{-pi}^{pi} psi(u)*sinh(u)
                   * [2/pi + x*cosh(u)*M_0(x*cosh(u))] du.
    """
    return _profile_f_b(p, _require_x(x), cfg)


def _sinh_pi_n_inverse(n: int) -> float:
    # pi / sinh(pi n) in overflow-safe form
    e = math.exp(-_PI * n)
    return 2.0 * _PI * e / (1.0 - e * e)


def coefficient_eval(
    p: PeriodicProfile, n: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> QuadratureResult:
    """Single transform coefficient with its quadrature metadata,

        a_n = pi/sinh(pi*n) * integral_{-pi}^{pi} psi(u)*sin(n*u) du.

    The sinh(u) factors of the generator cancel before quadrature (no 0/0
    at the origin).
    """
    if n < 1 or n != int(n):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    w = _sinh_pi_n_inverse(int(n))
    res = integrate_periodic_oscillatory(p.psi, int(n), cfg, parity=p.parity)
    return QuadratureResult(
        w * res.value, w * res.error_estimate, res.evaluations, res.converged
    )


def coefficients_from_profile(
    p: PeriodicProfile,
    n_max: int,
    family: KernelFamily,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> CoefficientSequence:
    """Transform coefficients a_1..a_{n_max} of a profile-generated function.

    Both families obey the same coefficient formula, so the family tag is
    supplied by the caller and stamped on the result.
    """
    if n_max < 1 or n_max != int(n_max):
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    values = []
    for n in range(1, int(n_max) + 1):
        res = coefficient_eval(p, n, cfg)
        res.require_converged(f"coefficients_from_profile(n={n})")
        values.append(res.value)
    return CoefficientSequence(family, tuple(values), int(n_max))


def _halfline_integral(
    g: Callable[[float], float], cfg: QuadratureConfig, context: str
) -> float:
    """Integral of g over (0, inf), split at 1.

    Near the origin the transform kernels oscillate on a log scale and the
    Macdonald factor is logarithmic, so the finite rule handles (0, 1) and
    the windowed rule takes the exponential tail.
    """
    near = integrate_finite(g, 0.0, 1.0, cfg)
    far = integrate_semi_infinite(g, 1.0, cfg)
    combined = QuadratureResult(
        near.value + far.value,
        near.error_estimate + far.error_estimate,
        near.evaluations + far.evaluations,
        near.converged and far.converged,
    )
    return combined.require_converged(context).value


def forward_a(
    f: Callable[[float], float], n: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Product-family forward transform a_n = integral_0^inf kernel_n(y) f(y) dy."""
    n = int(n)
    inner = cfg.tightened(10.0)

    def integrand(y: float) -> float:
        return product_kernel_fast(n, y, inner) * f(y)

    return _halfline_integral(integrand, cfg, f"forward_a(n={n})")


def forward_b(
    f: Callable[[float], float], n: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Squared-family forward transform with the non-negative kernel."""
    n = int(n)
    inner = cfg.tightened(10.0)

    def integrand(y: float) -> float:
        return squared_kernel_eval(n, y, inner).value * f(y)

    return _halfline_integral(integrand, cfg, f"forward_b(n={n})")


def _require_kernel(ke: KernelEvaluation) -> KernelEvaluation:
    if not ke.converged:
        raise NonConvergenceError(
            f"kernel quadrature did not converge at n={ke.n}, x={ke.x!r}",
            QuadratureResult(ke.value, ke.error_estimate, 0, False),
        )
    return ke


def _invert_series(
    c: CoefficientSequence,
    x: float,
    cfg: QuadratureConfig,
    expected_family: KernelFamily,
    kernel: Callable[[int, float, QuadratureConfig], KernelEvaluation],
    prefactor: float,
) -> float:
    if c.family is not expected_family:
        raise ValueError(
            f"coefficient sequence tagged {c.family.value!r} used with the "
            f"{expected_family.value!r} inversion series"
        )
    x = _require_x(x)
    total = 0.0
    last_term = 0.0
    for n, a in enumerate(c.values, start=1):
        if a == 0.0:
            last_term = 0.0
            continue
        ke = _require_kernel(kernel(n, x, cfg))
        last_term = math.sinh(_PI * n) * ke.value * a * prefactor
        total += last_term
    if total != 0.0 and abs(last_term) > 1e-6 * abs(total):
        warnings.warn(
            f"inversion series tail not settled: last term ratio "
            f"{abs(last_term) / abs(total):.3e} at n_max={c.n_max}",
            TailWarning,
            stacklevel=3,
        )
    return total


def invert_a(
    c: CoefficientSequence, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Product-family inversion series
    sum_n sinh(pi*n) * phi_n(x) * a_n / pi^3 over the stored prefix."""
    return _invert_series(
        c, x, cfg, KernelFamily.PRODUCT, phi_kernel, 1.0 / _PI**3
    )


def invert_b(
    c: CoefficientSequence, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Squared-family inversion series
    sum_n sinh(pi*n) * psi_n(x) * a_n / pi^2 over the stored prefix."""
    return _invert_series(
        c, x, cfg, KernelFamily.SQUARED, psi_kernel, 1.0 / _PI**2
    )


def _synthesize(
    c: CoefficientSequence,
    x: float,
    cfg: QuadratureConfig,
    expected_family: KernelFamily,
    kernel_value: Callable[[int, float], float],
) -> float:
    if c.family is not expected_family:
        raise ValueError(
            f"coefficient sequence tagged {c.family.value!r} used with the "
            f"{expected_family.value!r} synthesis series"
        )
    x = _require_x(x)
    _check_summability(c)
    total = 0.0
    for n, a in enumerate(c.values, start=1):
        if a == 0.0:
            continue
        total += a * kernel_value(n, x)
    return total


def synthesize_a(
    c: CoefficientSequence, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Product-family synthesis sum_n a_n * kernel_n(x) over the prefix."""
    def kv(n: int, y: float) -> float:
        return product_kernel_fast(n, y, cfg)

    return _synthesize(c, x, cfg, KernelFamily.PRODUCT, kv)


def synthesize_b(
    c: CoefficientSequence, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Squared-family synthesis over the prefix (l1-summable sequences)."""
    def kv(n: int, y: float) -> float:
        res = squared_kernel_eval(n, y, cfg)
        res.require_converged(f"synthesize_b(n={n}, x={y!r})")
        return res.value

    return _synthesize(c, x, cfg, KernelFamily.SQUARED, kv)


def analyze_a(
    f: Callable[[float], float], n: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Coefficient recovery by integration against the inversion kernel:

        a_n = sinh(pi*n)/pi^3 * integral_0^inf phi_n(x) f(x) dx.
    """
    n = int(n)
    inner = cfg.tightened(10.0)

    def integrand(y: float) -> float:
        return phi_kernel(n, y, inner).value * f(y)

    raw = _halfline_integral(integrand, cfg, f"analyze_a(n={n})")
    return math.sinh(_PI * n) / _PI**3 * raw


def analyze_b(
    f: Callable[[float], float], n: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Squared-family coefficient recovery, prefactor sinh(pi*n)/pi^2."""
    n = int(n)
    inner = cfg.tightened(10.0)

    def integrand(y: float) -> float:
        return psi_kernel(n, y, inner).value * f(y)

    raw = _halfline_integral(integrand, cfg, f"analyze_b(n={n})")
    return math.sinh(_PI * n) / _PI**2 * raw


def roundtrip_report(
    p: PeriodicProfile,
    family: KernelFamily,
    n_max: int,
    grid: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> ReconstructionReport:
    """Profile -> function -> coefficients -> inversion series -> comparison."""
    grid = [_require_x(x) for x in grid]
    if not grid:
        raise ValueError("grid must be non-empty")
    coeffs = coefficients_from_profile(p, n_max, family, cfg)
    if family is KernelFamily.PRODUCT:
        truth = [build_f_from_profile_a(p, x, cfg) for x in grid]
        recon = [invert_a(coeffs, x, cfg) for x in grid]
    else:
        truth = [build_f_from_profile_b(p, x, cfg) for x in grid]
        recon = [invert_b(coeffs, x, cfg) for x in grid]
    return ReconstructionReport.from_comparison(grid, truth, recon, n_max)
