"""Deterministic adaptive quadrature for the integral shapes used by the
discrete Lebedev transforms.

Four entry points cover every integral in the package:

* ``integrate_finite``               -- adaptive Gauss-Kronrod 7/15 on [a, b]
* ``integrate_semi_infinite``        -- probed truncation of an exponentially
  decaying tail, then the finite rule on a graded window grid
* ``integrate_abel_lower/upper``     -- inverse-square-root endpoint weights
  removed exactly by a sine / hyperbolic-cosine substitution
* ``integrate_periodic_oscillatory`` -- integrals against sin(n*u) on
  [-pi, pi], split into panels at the sine zeros

Everything is a pure function of its arguments: no global state, safe for
concurrent callers, and bit-identical across repeated calls.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from typing import Callable

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "DEFAULT_CONFIG",
    "QuadratureError",
    "InvalidIntervalError",
    "NonFiniteEvaluationError",
    "TailNotDecayingError",
    "NonConvergenceError",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_abel_lower",
    "integrate_abel_upper",
    "integrate_periodic_oscillatory",
]

_EPS = sys.float_info.epsilon
_UFLOW = sys.float_info.min


class QuadratureError(Exception):
    """Base class for quadrature failures."""


class InvalidIntervalError(QuadratureError):
    """Raised when integration bounds are degenerate or reversed."""


class NonFiniteEvaluationError(QuadratureError):
    """Raised when the integrand returns NaN or +-inf at an interior node."""


class TailNotDecayingError(QuadratureError):
    """Raised when a semi-infinite integrand fails its decay probes."""


class NonConvergenceError(QuadratureError):
    """Raised by consumers that require a converged result.

    Carries the partial ``QuadratureResult`` so callers can still inspect
    the best available value.
    """

    def __init__(self, message: str, result: "QuadratureResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerance and budget knobs shared by all integration routines.

    ``decay_cutoff`` is the relative magnitude below which a semi-infinite
    tail is considered exhausted.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 60
    max_evaluations: int = 10**6
    decay_cutoff: float = 1e-16

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol + self.rel_tol <= 0:
            raise ValueError("abs_tol + rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.max_evaluations < 15:
            raise ValueError("max_evaluations must be >= 15")
        if self.decay_cutoff <= 0:
            raise ValueError("decay_cutoff must be positive")

    def tightened(self, factor: float = 100.0) -> "QuadratureConfig":
        """Derived config for nested (inner) integrals.

        Tolerances shrink by ``factor`` but never below a floor near machine
        precision, and never grow; the subdivision budget is widened so the
        inner integral is not starved before reaching its roundoff floor.
        """

        def shrink(tol: float, floor: float) -> float:
            if tol <= floor:
                return tol
            return max(tol / factor, floor)

        return replace(
            self,
            abs_tol=shrink(self.abs_tol, 1e-16),
            rel_tol=shrink(self.rel_tol, 1e-13),
            max_subdivisions=max(self.max_subdivisions, 240),
        )


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate, evaluation count, and convergence flag.

    A converged result satisfies
    ``error_estimate <= max(abs_tol, rel_tol*|value|, machine_floor)`` where
    ``machine_floor`` is the scaled-roundoff level ``55*eps*int(|f|)``;
    tolerances below that floor cannot be certified in double precision.
    """

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def require_converged(self, context: str = "") -> "QuadratureResult":
        if not self.converged:
            where = f" in {context}" if context else ""
            raise NonConvergenceError(
                f"quadrature did not converge{where}: value={self.value!r}, "
                f"error_estimate={self.error_estimate!r} after "
                f"{self.evaluations} evaluations",
                self,
            )
        return self


# 7/15 Gauss-Kronrod node family (positive abscissae; rule is symmetric).
# Gauss nodes are the odd-indexed Kronrod abscissae plus the midpoint.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
)
_WGK_CENTER = 0.209482141084727828012999174891714
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
)
_WG_CENTER = 0.417959183673469387755102040816327


@dataclass
class _Panel:
    a: float
    b: float
    value: float
    error: float
    maxabs: float
    resabs: float


def _gk15(f: Callable[[float], float], a: float, b: float) -> _Panel:
    """Single Gauss-Kronrod 7/15 panel with a QUADPACK-style error estimate."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    fc = f(mid)
    if not math.isfinite(fc):
        raise NonFiniteEvaluationError(f"integrand returned {fc!r} at {mid!r}")
    resk = _WGK_CENTER * fc
    resg = _WG_CENTER * fc
    resabs = _WGK_CENTER * abs(fc)
    maxabs = abs(fc)
    fvals = [fc]
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(mid - dx)
        f2 = f(mid + dx)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            bad = mid - dx if not math.isfinite(f1) else mid + dx
            raise NonFiniteEvaluationError(
                f"integrand returned a non-finite value at {bad!r}"
            )
        s = f1 + f2
        resk += _WGK[j] * s
        if j % 2 == 1:
            resg += _WG[j // 2] * s
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        a1 = abs(f1)
        a2 = abs(f2)
        if a1 > maxabs:
            maxabs = a1
        if a2 > maxabs:
            maxabs = a2
        fvals.append(f1)
        fvals.append(f2)

    reskh = 0.5 * resk
    resasc = _WGK_CENTER * abs(fc - reskh)
    idx = 1
    for j in range(7):
        resasc += _WGK[j] * (abs(fvals[idx] - reskh) + abs(fvals[idx + 1] - reskh))
        idx += 2

    value = resk * half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPS):
        err = max(_EPS * 50.0 * resabs, err)
    return _Panel(a, b, value, err, maxabs, resabs)


def _total(panels: list[_Panel], magnitude_order: bool = False) -> tuple[float, float]:
    """Deterministic totals.

    Spatial-order compensated summation by default; ascending-magnitude
    plain summation when ``magnitude_order`` is set (used for the
    oscillatory panel sums).
    """
    if magnitude_order:
        ordered = sorted(panels, key=lambda p: (abs(p.value), p.a))
        value = 0.0
        for p in ordered:
            value += p.value
    else:
        ordered = sorted(panels, key=lambda p: p.a)
        value = math.fsum(p.value for p in ordered)
    error = math.fsum(p.error for p in ordered)
    return value, error


def _refine(
    f: Callable[[float], float],
    panels: list[_Panel],
    cfg: QuadratureConfig,
    evals: int,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
    magnitude_order: bool = False,
) -> QuadratureResult:
    """Worst-first global bisection until tolerances or budgets are met.

    ``panels`` already carry their Gauss-Kronrod results; ``evals`` counts
    the evaluations spent producing them.
    """
    if abs_tol is None:
        abs_tol = cfg.abs_tol
    if rel_tol is None:
        rel_tol = cfg.rel_tol

    value = math.fsum(p.value for p in panels)
    error = math.fsum(p.error for p in panels)
    resabs = math.fsum(p.resabs for p in panels)
    splits = 0
    while True:
        # The third term grants convergence once the estimate consists of
        # nothing but the per-panel roundoff floors (50*eps*resabs each):
        # requested tolerances below the double-precision floor of the given
        # integrand are otherwise unreachable.
        tol = max(abs_tol, rel_tol * abs(value), 55.0 * _EPS * resabs)
        if error <= tol:
            value, error = _total(panels, magnitude_order)
            if error <= max(abs_tol, rel_tol * abs(value), 55.0 * _EPS * resabs):
                return QuadratureResult(value, error, evals, True)
        if splits >= cfg.max_subdivisions or evals + 30 > cfg.max_evaluations:
            value, error = _total(panels, magnitude_order)
            return QuadratureResult(value, error, evals, False)

        worst_idx = -1
        worst_err = -1.0
        for i, p in enumerate(panels):
            mid = 0.5 * (p.a + p.b)
            if p.error > worst_err and p.a < mid < p.b:
                worst_err = p.error
                worst_idx = i
        if worst_idx < 0:
            # every panel is at floating-point width; nothing left to do
            value, error = _total(panels, magnitude_order)
            converged = error <= max(abs_tol, rel_tol * abs(value), 55.0 * _EPS * resabs)
            return QuadratureResult(value, error, evals, converged)

        worst = panels[worst_idx]
        mid = 0.5 * (worst.a + worst.b)
        left = _gk15(f, worst.a, mid)
        right = _gk15(f, mid, worst.b)
        evals += 30
        splits += 1
        value += left.value + right.value - worst.value
        error += left.error + right.error - worst.error
        resabs += left.resabs + right.resabs - worst.resabs
        panels[worst_idx] = left
        panels.append(right)


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Adaptive integral of ``f`` over the finite interval [a, b].

    ``f`` is evaluated only at interior nodes, so integrable endpoint
    singularities are admissible.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise InvalidIntervalError(f"invalid interval [{a!r}, {b!r}]")
    panels = [_gk15(f, a, b)]
    return _refine(f, panels, cfg, 15)


def integrate_semi_infinite(
    f: Callable[[float], float],
    a: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Integral of ``f`` over [a, inf) for integrands with exponential-type decay.

    Geometrically growing probe windows locate the truncation point where the
    integrand's magnitude falls below ``decay_cutoff`` relative to the
    accumulated value; the probe panels then seed the adaptive finite rule.
    Raises ``TailNotDecayingError`` when the windowed magnitude fails to
    decrease over the last two probe windows.
    """
    if not math.isfinite(a):
        raise InvalidIntervalError(f"invalid lower bound {a!r}")

    panels: list[_Panel] = []
    evals = 0
    acc = 0.0
    tail_err = 0.0
    maxabs_hist: list[float] = []
    certified = False
    start = a
    width = 4.0
    for k in range(48):
        if evals + 15 > cfg.max_evaluations:
            break
        panel = _gk15(f, start, start + width)
        evals += 15
        panels.append(panel)
        acc += panel.value
        maxabs_hist.append(panel.maxabs)
        scale = max(abs(acc), cfg.abs_tol, _UFLOW)
        if panel.maxabs * width <= cfg.decay_cutoff * scale:
            # neglected tail is bounded by a constant multiple of the cutoff
            tail_err = panel.maxabs * width
            certified = True
            break
        if (
            k >= 3
            and maxabs_hist[-1] >= maxabs_hist[-2] >= maxabs_hist[-3]
        ):
            raise TailNotDecayingError(
                "integrand magnitude non-decreasing over the last two probe "
                f"windows (up to t={start + width!r})"
            )
        start += width
        width *= 2.0

    result = _refine(f, panels, cfg, evals)
    # the neglected tail is bounded by the cutoff times the value scale
    error = result.error_estimate + tail_err
    converged = result.converged and certified
    return QuadratureResult(result.value, error, result.evaluations, converged)


def integrate_abel_lower(
    g: Callable[[float], float],
    x: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Integral of g(t)/sqrt(x^2 - t^2) over (0, x).

    The substitution t = x*sin(theta) removes the endpoint singularity
    exactly, leaving the regular integral of g(x*sin(theta)) over
    (0, pi/2).
    """
    if not (math.isfinite(x) and x > 0):
        raise InvalidIntervalError(f"upper limit must be positive, got {x!r}")
    return integrate_finite(lambda theta: g(x * math.sin(theta)), 0.0, 0.5 * math.pi, cfg)


def integrate_abel_upper(
    g: Callable[[float], float],
    x: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Integral of g(t)/sqrt(t^2 - x^2) over (x, inf).

    The substitution t = x*cosh(v) removes the endpoint singularity exactly,
    leaving the integral of g(x*cosh(v)) over (0, inf).
    """
    if not (math.isfinite(x) and x > 0):
        raise InvalidIntervalError(f"lower limit must be positive, got {x!r}")
    return integrate_semi_infinite(lambda v: g(x * math.cosh(v)), 0.0, cfg)


def integrate_periodic_oscillatory(
    f: Callable[[float], float],
    n: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    parity: str = "none",
) -> QuadratureResult:
    """Integral of f(u)*sin(n*u) over [-pi, pi], split at the sine zeros.

    ``parity`` declares a symmetry of ``f`` itself: "odd" restricts the
    quadrature to [0, pi] and doubles it, "even" short-circuits to the exact
    zero that the sine weight forces, "none" integrates the full range.
    Panel results are accumulated in ascending order of magnitude.
    """
    if n < 1 or n != int(n):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if parity not in ("none", "odd", "even"):
        raise ValueError(f"parity must be 'none', 'odd' or 'even', got {parity!r}")
    if parity == "even":
        return QuadratureResult(0.0, 0.0, 0, True)

    n = int(n)
    if parity == "odd":
        factor = 2.0
        ks = range(0, n)
    else:
        factor = 1.0
        ks = range(-n, n)
    bounds = [(k * math.pi / n, (k + 1) * math.pi / n) for k in ks]

    def weighted(u: float) -> float:
        return f(u) * math.sin(n * u)

    panels: list[_Panel] = []
    evals = 0
    for lo, hi in bounds:
        if evals + 15 > cfg.max_evaluations:
            # budget too small even for the per-half-period coarse pass
            value, error = _total(panels, magnitude_order=True)
            return QuadratureResult(factor * value, factor * (error + abs(value)),
                                    evals, False)
        panels.append(_gk15(weighted, lo, hi))
        evals += 15

    res = _refine(
        weighted,
        panels,
        cfg,
        evals,
        abs_tol=cfg.abs_tol / factor,
        magnitude_order=True,
    )
    return QuadratureResult(
        factor * res.value,
        factor * res.error_estimate,
        res.evaluations,
        res.converged,
    )
