"""Verification suites.

Every check pits two independent computations against each other: an
identity's closed form against its quadrature, the two evaluation routes of
a kernel, an analysis integral against the coefficients that built its
input, or an error estimate against the true error on integrals with known
values.  Each check reports a measured error and its tolerance; the CLI's
``verify`` command and the acceptance test suite both run these.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .quadrature import (
    QuadratureConfig,
    integrate_abel_lower,
    integrate_abel_upper,
    integrate_finite,
    integrate_periodic_oscillatory,
    integrate_semi_infinite,
)
from .special_functions import (
    KernelFamily,
    LEBEDEV_LATTICE_BOUND,
    lebedev_lattice_statistic,
    macdonald_k0,
    product_kernel,
    product_kernel_series,
    squared_kernel,
    squared_kernel_abel,
)
from .kernels import (
    k0_halfline_projection,
    k0_halfline_projection_closed,
    laplace_macdonald_closed,
    laplace_macdonald_numeric,
    struve_abel_projection,
    struve_abel_projection_closed,
)
from . import transforms as tr

__all__ = ["CheckResult", "SUITES", "run_suite", "HONESTY_SET"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


def _rel(err: float, reference: float, floor: float = 0.0) -> float:
    scale = max(abs(reference), floor)
    if scale == 0.0:
        return 0.0 if err == 0.0 else math.inf
    return err / scale


# Tuned configurations.  The deep identity lattices push the engine toward
# its double-precision floor; the analysis integrals get per-index budgets
# because the sinh(pi*n) prefactor amplifies raw quadrature error.
_CFG_TIGHT = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-11, max_subdivisions=400)
_CFG_IDENTITY = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11, max_subdivisions=400)
_CFG_PROJ = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=300)
_CFG_ROUNDTRIP = QuadratureConfig(abs_tol=1e-11, rel_tol=1e-9, max_subdivisions=200)
_CFG_FORWARD = QuadratureConfig(abs_tol=1e-9, rel_tol=1e-8, max_subdivisions=200)
_CFG_HONESTY = QuadratureConfig(max_subdivisions=400)


def check_laplace_macdonald() -> list[CheckResult]:
    """Laplace transform of K_{i*n} against its closed form, to 1e-8."""
    out = []
    for n in range(1, 6):
        for u in (0.25, 0.5, 1.0, 2.0, 3.0):
            closed = laplace_macdonald_closed(n, u)
            numeric = laplace_macdonald_numeric(n, u, _CFG_TIGHT)
            rel = _rel(abs(numeric - closed), closed)
            out.append(
                CheckResult(
                    f"laplace_macdonald n={n} u={u}", rel, 1e-8, rel <= 1e-8
                )
            )
    return out


def check_identity_squared() -> list[CheckResult]:
    """Squared kernel: direct square against the Abel route, to 1e-7."""
    out = []
    for n in range(1, 7):
        for x in (0.5, 1.0, 2.0, 4.0):
            direct = squared_kernel(n, x, _CFG_TIGHT)
            abel = squared_kernel_abel(n, x, _CFG_TIGHT)
            rel = _rel(abs(direct - abel), direct)
            out.append(
                CheckResult(
                    f"squared_kernel_identity n={n} x={x}", rel, 1e-7, rel <= 1e-7
                )
            )
    return out


def check_identity_product() -> list[CheckResult]:
    """Product kernel: Bessel-product route against the Abel route, to 1e-6."""
    out = []
    for n in range(1, 5):
        for x in (0.5, 1.0, 2.0):
            abel = product_kernel(n, x, _CFG_IDENTITY)
            series = product_kernel_series(n, x, _CFG_IDENTITY)
            rel = _rel(abs(abel - series), series)
            out.append(
                CheckResult(
                    f"product_kernel_identity n={n} x={x}", rel, 1e-6, rel <= 1e-6
                )
            )
    return out


def check_projections() -> list[CheckResult]:
    """The two closed-form Abel projections, to 1e-7 relative
    (absolute floor 1e-12 where the closed side underflows)."""
    out = []
    for t in (0.5, 1.0, 2.0, 4.0):
        for u in (0.0, 0.5, 1.0, 2.0):
            closed = k0_halfline_projection_closed(t, u)
            numeric = k0_halfline_projection(t, u, _CFG_PROJ)
            rel = _rel(abs(numeric - closed), closed, floor=1e-12)
            out.append(
                CheckResult(
                    f"k0_halfline_projection t={t} u={u}", rel, 1e-7, rel <= 1e-7
                )
            )
    for t in (0.5, 1.0, 2.0, 4.0):
        for u in (0.0, 0.5, 1.0, 2.0):
            closed = struve_abel_projection_closed(t, u)
            numeric = struve_abel_projection(t, u, _CFG_PROJ)
            rel = _rel(abs(numeric - closed), closed, floor=1e-12)
            out.append(
                CheckResult(
                    f"struve_abel_projection t={t} u={u}", rel, 1e-7, rel <= 1e-7
                )
            )
    return out


def _analysis_cfg(n: int, prefactor_power: int) -> QuadratureConfig:
    # raw-integral budget so that sinh(pi*n)/pi^p times the error stays
    # an order below the 1e-5 biorthogonality tolerance
    scale = math.sinh(math.pi * n) / math.pi**prefactor_power
    return QuadratureConfig(
        abs_tol=max(1e-6 / scale / 4.0, 1e-14),
        rel_tol=1e-8,
        max_subdivisions=200,
    )


def check_biorthogonality() -> list[CheckResult]:
    """analyze(synthesize(e_m)) recovers the unit sequences, both families."""
    out = []
    size = 4
    for family, synth, analyze, power in (
        (KernelFamily.PRODUCT, tr.synthesize_a, tr.analyze_a, 3),
        (KernelFamily.SQUARED, tr.synthesize_b, tr.analyze_b, 2),
    ):
        for m in range(1, size + 1):
            coeffs = tr.CoefficientSequence.from_values(
                family, [1.0 if k == m else 0.0 for k in range(1, size + 1)]
            )
            synth_cfg = _CFG_FORWARD

            def f(y: float) -> float:
                return synth(coeffs, y, synth_cfg)

            for n in range(1, size + 1):
                got = analyze(f, n, _analysis_cfg(n, power))
                want = 1.0 if n == m else 0.0
                err = abs(got - want)
                out.append(
                    CheckResult(
                        f"biorthogonality {family.value} n={n} m={m}",
                        err,
                        1e-5,
                        err <= 1e-5,
                    )
                )
    return out


def _roundtrip_checks(
    family: KernelFamily, label: str
) -> list[CheckResult]:
    out = []
    profile = tr.builtin_profile("sin")
    target = math.pi**2 / math.sinh(math.pi)
    coeffs = tr.coefficients_from_profile(profile, 5, family, _CFG_ROUNDTRIP)
    rel = _rel(abs(coeffs.values[0] - target), target)
    out.append(CheckResult(f"{label} a1 formula", rel, 1e-8, rel <= 1e-8))
    for n in range(2, 6):
        err = abs(coeffs.values[n - 1])
        out.append(CheckResult(f"{label} a{n} vanishes", err, 1e-8, err <= 1e-8))
    report = tr.roundtrip_report(
        profile, family, 8, (0.2, 0.5, 1.0, 2.0, 4.0), _CFG_ROUNDTRIP
    )
    out.append(
        CheckResult(
            f"{label} reconstruction",
            report.max_rel_error,
            1e-4,
            report.max_rel_error <= 1e-4,
        )
    )
    return out


def check_roundtrip_product() -> list[CheckResult]:
    return _roundtrip_checks(KernelFamily.PRODUCT, "roundtrip_product")


def check_roundtrip_squared() -> list[CheckResult]:
    return _roundtrip_checks(KernelFamily.SQUARED, "roundtrip_squared")


def check_roundtrip_random(seed: int = 0) -> list[CheckResult]:
    """Seeded random two-mode profile, reconstructed in both families."""
    rng = random.Random(seed)
    b1 = rng.uniform(0.3, 1.0)
    b2 = rng.uniform(-0.5, 0.5)
    profile = tr.fourier_profile([b1, b2])
    out = []
    for family, label in (
        (KernelFamily.PRODUCT, "roundtrip_random_product"),
        (KernelFamily.SQUARED, "roundtrip_random_squared"),
    ):
        report = tr.roundtrip_report(
            profile, family, 6, (0.5, 1.0, 2.0), _CFG_ROUNDTRIP
        )
        out.append(
            CheckResult(
                f"{label} seed={seed}",
                report.max_rel_error,
                1e-3,
                report.max_rel_error <= 1e-3,
                detail=f"b1={b1!r}, b2={b2!r}",
            )
        )
    return out


def check_forward_consistency() -> list[CheckResult]:
    """Forward integrals against the profile coefficient formula, to 1e-6."""
    profile = tr.fourier_profile([1.0, 0.5])
    coeffs = tr.coefficients_from_profile(
        profile, 4, KernelFamily.PRODUCT, _CFG_ROUNDTRIP
    )
    out = []

    def f_a(y: float) -> float:
        return tr.build_f_from_profile_a(profile, y, _CFG_FORWARD)

    def f_b(y: float) -> float:
        return tr.build_f_from_profile_b(profile, y, _CFG_FORWARD)

    for n in range(1, 5):
        got = tr.forward_a(f_a, n, _CFG_FORWARD)
        err = abs(got - coeffs.values[n - 1])
        out.append(
            CheckResult(f"forward_a consistency n={n}", err, 1e-6, err <= 1e-6)
        )
    for n in range(1, 5):
        got = tr.forward_b(f_b, n, _CFG_FORWARD)
        err = abs(got - coeffs.values[n - 1])
        out.append(
            CheckResult(f"forward_b consistency n={n}", err, 1e-6, err <= 1e-6)
        )
    return out


def check_bounds() -> list[CheckResult]:
    """Magnitude lattice fixture and the two K_0 boundary asymptotics."""
    out = []
    stat = lebedev_lattice_statistic()
    limit = LEBEDEV_LATTICE_BOUND * 1.01
    out.append(
        CheckResult(
            "lebedev lattice statistic", stat, limit, stat <= limit,
            detail=f"fixture={LEBEDEV_LATTICE_BOUND!r}",
        )
    )
    large = macdonald_k0(50.0) * math.exp(50.0) * math.sqrt(100.0 / math.pi)
    out.append(
        CheckResult(
            "k0 large-argument asymptotic", large, 1.01,
            0.99 <= large <= 1.01,
        )
    )
    small = macdonald_k0(1e-6) / (-math.log(1e-6))
    out.append(
        CheckResult(
            "k0 logarithmic origin", small, 1.1, 0.9 <= small <= 1.1
        )
    )
    return out


# Twenty integrands with closed forms, spanning all five integration
# routines.  Entries: (name, runner(cfg) -> QuadratureResult, exact value).
HONESTY_SET = (
    ("finite linear", lambda cfg: integrate_finite(lambda t: t, 0.0, 1.0, cfg), 0.5),
    ("finite exp", lambda cfg: integrate_finite(math.exp, 0.0, 1.0, cfg), math.e - 1.0),
    ("finite sine arch", lambda cfg: integrate_finite(math.sin, 0.0, math.pi, cfg), 2.0),
    ("finite log endpoint", lambda cfg: integrate_finite(math.log, 0.0, 1.0, cfg), -1.0),
    ("finite inverse sqrt", lambda cfg: integrate_finite(lambda t: t ** -0.5, 0.0, 1.0, cfg), 2.0),
    ("finite kink", lambda cfg: integrate_finite(abs, -1.0, 1.0, cfg), 1.0),
    ("finite poisson", lambda cfg: integrate_finite(lambda t: 1.0 / (2.0 + math.cos(t)), 0.0, 2.0 * math.pi, cfg), 2.0 * math.pi / math.sqrt(3.0)),
    ("finite arctan", lambda cfg: integrate_finite(lambda t: 1.0 / (1.0 + t * t), 0.0, 1.0, cfg), math.pi / 4.0),
    ("finite orthogonal sines", lambda cfg: integrate_finite(lambda u: math.sin(u) * math.sin(3.0 * u), -math.pi, math.pi, cfg), 0.0),
    ("semi exp", lambda cfg: integrate_semi_infinite(lambda t: math.exp(-t), 0.0, cfg), 1.0),
    ("semi gaussian moment", lambda cfg: integrate_semi_infinite(lambda t: t * math.exp(-t * t), 0.0, cfg), 0.5),
    ("semi shifted exp", lambda cfg: integrate_semi_infinite(lambda t: math.exp(-t), 2.0, cfg), math.exp(-2.0)),
    ("semi damped cosine", lambda cfg: integrate_semi_infinite(lambda t: math.exp(-3.0 * t) * math.cos(5.0 * t), 0.0, cfg), 3.0 / 34.0),
    ("semi sech", lambda cfg: integrate_semi_infinite(lambda t: 1.0 / math.cosh(t), 0.0, cfg), math.pi / 2.0),
    ("abel lower constant", lambda cfg: integrate_abel_lower(lambda t: 1.0, 1.0, cfg), math.pi / 2.0),
    ("abel lower linear", lambda cfg: integrate_abel_lower(lambda t: t, 2.0, cfg), 2.0),
    ("abel lower quadratic", lambda cfg: integrate_abel_lower(lambda t: t * t, 1.0, cfg), math.pi / 4.0),
    ("abel upper power", lambda cfg: integrate_abel_upper(lambda t: t ** -2.0, 1.0, cfg), 1.0),
    ("oscillatory sine norm", lambda cfg: integrate_periodic_oscillatory(math.sin, 1, cfg, parity="odd"), math.pi),
    ("oscillatory sinh", lambda cfg: integrate_periodic_oscillatory(math.sinh, 3, cfg, parity="odd"), 2.0 * 3.0 * math.sinh(math.pi) / 10.0),
)


def check_quadrature_honesty() -> list[CheckResult]:
    """True error at most 10x the reported estimate on converged results."""
    out = []
    for name, runner, exact in HONESTY_SET:
        res = runner(_CFG_HONESTY)
        true_err = abs(res.value - exact)
        if not res.converged:
            out.append(
                CheckResult(
                    f"honesty {name}", math.inf, 0.0, False,
                    detail="did not converge",
                )
            )
            continue
        bound = 10.0 * res.error_estimate
        out.append(
            CheckResult(
                f"honesty {name}",
                true_err,
                bound,
                true_err <= bound,
                detail=f"estimate={res.error_estimate!r}",
            )
        )
    return out


SUITES = {
    "identities": (
        check_laplace_macdonald,
        check_identity_squared,
        check_identity_product,
        check_projections,
    ),
    "biorthogonality": (check_biorthogonality,),
    "roundtrip": (
        check_roundtrip_product,
        check_roundtrip_squared,
        check_roundtrip_random,
        check_forward_consistency,
    ),
    "bounds": (check_bounds, check_quadrature_honesty),
}
SUITES["all"] = (
    SUITES["identities"]
    + SUITES["biorthogonality"]
    + SUITES["roundtrip"]
    + SUITES["bounds"]
)


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    """Run a named suite; failed checks are recorded, never raised."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    results: list[CheckResult] = []
    for check in SUITES[name]:
        try:
            if check is check_roundtrip_random:
                results.extend(check(seed))
            else:
                results.extend(check())
        except Exception as exc:  # surfaced in the report, partial output kept
            results.append(
                CheckResult(
                    f"{check.__name__} crashed", math.inf, 0.0, False,
                    detail=f"{type(exc).__name__}: {exc}",
                )
            )
    return results
