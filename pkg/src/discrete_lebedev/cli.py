"""Command-line surface.

Subcommands
-----------
``kernel``       evaluate one of the four kernels on an x grid (CSV/JSON)
``coeffs``       transform coefficients of a profile (CSV/JSON)
``reconstruct``  full round trip of a profile, JSON report
``verify``       run a verification suite, JSON report
``bench``        wall-time and evaluation-count smoke benchmarks

Exit codes: 0 success, 1 verification failure, 2 partial convergence,
64 usage error, 65 numeric failure.  CSV numeric fields are written with 17
significant digits; re-running a command with identical inputs produces
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass

from .quadrature import (
    DEFAULT_CONFIG,
    NonConvergenceError,
    QuadratureConfig,
    QuadratureError,
)
from .special_functions import (
    KernelFamily,
    macdonald_k_imag_eval,
    product_kernel_eval,
    squared_kernel_eval,
)
from .kernels import phi_kernel, psi_kernel
from . import transforms as tr
from .verification import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64
EXIT_NUMERIC = 65

REPORT_VERSION = 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract is 64
        raise _UsageError(message)


@dataclass(frozen=True)
class ProfileSpec:
    """Parsed ``--profile`` argument: builtin name, sine series, or CSV."""

    kind: str
    params: tuple

    def build(self) -> tr.PeriodicProfile:
        if self.kind == "builtin":
            name, amplitude = self.params
            return tr.builtin_profile(name, amplitude)
        if self.kind == "fourier":
            return tr.fourier_profile(self.params)
        if self.kind == "sampled":
            (path,) = self.params
            us, vs = _read_profile_csv(path)
            return tr.sampled_profile(us, vs, label=f"sampled:{path}")
        raise _UsageError(f"unknown profile kind {self.kind!r}")


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters shared by the data-producing commands."""

    tolerances: QuadratureConfig
    n_max: int
    x_grid: tuple[float, ...]
    output_format: str
    seed: int

    def __post_init__(self):
        if any(x <= 0 for x in self.x_grid):
            raise _UsageError("x grid values must be strictly positive")
        if any(b <= a for a, b in zip(self.x_grid, self.x_grid[1:])):
            raise _UsageError("x grid values must be strictly increasing")


def _parse_profile(spec: str) -> ProfileSpec:
    head, _, rest = spec.partition(":")
    if head in tr.BUILTIN_PROFILES:
        amplitude = 1.0
        if rest:
            try:
                amplitude = float(rest)
            except ValueError as exc:
                raise _UsageError(f"bad builtin amplitude {rest!r}") from exc
        return ProfileSpec("builtin", (head, amplitude))
    if head == "fourier":
        if not rest:
            raise _UsageError("fourier profile needs a coefficient list, e.g. fourier:1,0.5")
        try:
            coeffs = tuple(float(t) for t in rest.split(","))
        except ValueError as exc:
            raise _UsageError(f"bad fourier coefficients {rest!r}") from exc
        return ProfileSpec("fourier", coeffs)
    if head == "sampled":
        if not rest:
            raise _UsageError("sampled profile needs a CSV path, e.g. sampled:psi.csv")
        return ProfileSpec("sampled", (rest,))
    raise _UsageError(
        f"unknown profile {spec!r}; use one of "
        f"{', '.join(tr.BUILTIN_PROFILES)}, fourier:..., sampled:PATH"
    )


def _read_profile_csv(path: str) -> tuple[list[float], list[float]]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise _UsageError(f"cannot read profile CSV {path!r}: {exc}") from exc
    if not rows or [c.strip() for c in rows[0]] != ["u", "psi"]:
        raise _UsageError(f"profile CSV {path!r} must start with the header 'u,psi'")
    us, vs = [], []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise _UsageError(f"profile CSV {path!r}: line {i} needs two columns")
        try:
            us.append(float(row[0]))
            vs.append(float(row[1]))
        except ValueError as exc:
            raise _UsageError(f"profile CSV {path!r}: bad number on line {i}") from exc
    return us, vs


def _parse_grid(args) -> tuple[float, ...]:
    if args.x is not None and args.x_grid is not None:
        raise _UsageError("give either --x or --x-grid, not both")
    if args.x is not None:
        try:
            vals = tuple(float(t) for t in args.x.split(","))
        except ValueError as exc:
            raise _UsageError(f"bad --x list {args.x!r}") from exc
        return vals
    if args.x_grid is not None:
        parts = args.x_grid.split(":")
        if len(parts) != 3:
            raise _UsageError("--x-grid must be start:stop:count")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise _UsageError(f"bad --x-grid {args.x_grid!r}") from exc
        if count < 1:
            raise _UsageError("--x-grid count must be >= 1")
        if count == 1:
            return (start,)
        step = (stop - start) / (count - 1)
        return tuple(start + i * step for i in range(count))
    raise _UsageError("an x grid is required (--x or --x-grid)")


def _run_config(args, need_grid: bool = True) -> RunConfig:
    tol = QuadratureConfig(
        abs_tol=args.tol_abs if args.tol_abs is not None else DEFAULT_CONFIG.abs_tol,
        rel_tol=args.tol_rel if args.tol_rel is not None else DEFAULT_CONFIG.rel_tol,
        max_subdivisions=DEFAULT_CONFIG.max_subdivisions,
        max_evaluations=DEFAULT_CONFIG.max_evaluations,
        decay_cutoff=DEFAULT_CONFIG.decay_cutoff,
    )
    grid = _parse_grid(args) if need_grid else ()
    return RunConfig(
        tolerances=tol,
        n_max=getattr(args, "n_max", 1) or 1,
        x_grid=grid,
        output_format=args.format,
        seed=getattr(args, "seed", 0) or 0,
    )


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return format(float(v), ".17g")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _tol_dict(cfg: QuadratureConfig) -> dict:
    return {
        "abs_tol": cfg.abs_tol,
        "rel_tol": cfg.rel_tol,
        "max_subdivisions": cfg.max_subdivisions,
        "max_evaluations": cfg.max_evaluations,
        "decay_cutoff": cfg.decay_cutoff,
    }


def cmd_kernel(args) -> int:
    rc = _run_config(args)
    cfg = rc.tolerances
    n = args.n
    if n is None or n < 1:
        raise _UsageError("--n must be a positive integer")
    rows = []
    all_converged = True
    for x in rc.x_grid:
        if args.family == "phi":
            ev = phi_kernel(n, x, cfg)
            value, err, conv = ev.value, ev.error_estimate, ev.converged
        elif args.family == "psi":
            ev = psi_kernel(n, x, cfg)
            value, err, conv = ev.value, ev.error_estimate, ev.converged
        elif args.family == "product":
            res = product_kernel_eval(n, x, cfg)
            value, err, conv = res.value, res.error_estimate, res.converged
        else:  # squared
            res = squared_kernel_eval(n, x, cfg)
            value, err, conv = res.value, res.error_estimate, res.converged
        all_converged = all_converged and conv
        rows.append((x, value, err, conv))

    if rc.output_format == "csv":
        lines = ["x,value,error_estimate"]
        lines += [f"{_fmt(x)},{_fmt(v)},{_fmt(e)}" for x, v, e, _ in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(
            _json_dump(
                {
                    "report_version": REPORT_VERSION,
                    "command": "kernel",
                    "family": args.family,
                    "n": n,
                    "tolerances": _tol_dict(cfg),
                    "rows": [
                        {
                            "x": x,
                            "value": v,
                            "error_estimate": e,
                            "converged": c,
                        }
                        for x, v, e, c in rows
                    ],
                }
            ),
            args.out,
        )
    return EXIT_OK if all_converged else EXIT_PARTIAL


def cmd_coeffs(args) -> int:
    rc = _run_config(args, need_grid=False)
    cfg = rc.tolerances
    if args.n_max is None or args.n_max < 1:
        raise _UsageError("--n-max must be a positive integer")
    family = KernelFamily.PRODUCT if args.family == "product" else KernelFamily.SQUARED
    profile = _parse_profile(args.profile).build()
    rows = []
    all_converged = True
    for n in range(1, args.n_max + 1):
        res = tr.coefficient_eval(profile, n, cfg)
        all_converged = all_converged and res.converged
        rows.append((n, res.value, res.error_estimate, res.converged))

    if rc.output_format == "csv":
        lines = ["n,a_n"]
        lines += [f"{n},{_fmt(v)}" for n, v, _, _ in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        seq = tr.CoefficientSequence(family, tuple(v for _, v, _, _ in rows), args.n_max)
        try:
            tr._check_summability(seq)
            summable = True
        except tr.SummabilityViolationError:
            summable = False
        _emit(
            _json_dump(
                {
                    "report_version": REPORT_VERSION,
                    "command": "coeffs",
                    "family": family.value,
                    "profile": args.profile,
                    "n_max": args.n_max,
                    "tolerances": _tol_dict(cfg),
                    "summability_ok": summable,
                    "weighted_terms": list(seq.weighted_terms()),
                    "rows": [
                        {
                            "n": n,
                            "a_n": v,
                            "error_estimate": e,
                            "converged": c,
                        }
                        for n, v, e, c in rows
                    ],
                }
            ),
            args.out,
        )
    return EXIT_OK if all_converged else EXIT_PARTIAL


def cmd_reconstruct(args) -> int:
    rc = _run_config(args)
    cfg = rc.tolerances
    if args.n_max is None or args.n_max < 1:
        raise _UsageError("--n-max must be a positive integer")
    family = KernelFamily.PRODUCT if args.family == "product" else KernelFamily.SQUARED
    profile = _parse_profile(args.profile).build()
    try:
        report = tr.roundtrip_report(profile, family, args.n_max, rc.x_grid, cfg)
    except NonConvergenceError as exc:
        sys.stderr.write(f"partial convergence: {exc}\n")
        return EXIT_PARTIAL
    payload = {
        "report_version": REPORT_VERSION,
        "command": "reconstruct",
        "family": family.value,
        "profile": args.profile,
        "n_max": args.n_max,
        "tolerances": _tol_dict(cfg),
    }
    payload.update(report.to_dict())
    _emit(_json_dump(payload), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed or 0)
    passed = all(r.passed for r in results)
    payload = {
        "report_version": REPORT_VERSION,
        "command": "verify",
        "suite": args.suite,
        "seed": args.seed or 0,
        "passed": passed,
        "checks": [r.to_dict() for r in results],
    }
    _emit(_json_dump(payload), args.out)
    return EXIT_OK if passed else EXIT_VERIFY_FAIL


def cmd_bench(args) -> int:
    rc_cfg = QuadratureConfig(
        abs_tol=args.tol_abs if args.tol_abs is not None else DEFAULT_CONFIG.abs_tol,
        rel_tol=args.tol_rel if args.tol_rel is not None else DEFAULT_CONFIG.rel_tol,
    )
    t0 = time.perf_counter()
    evaluations = 0
    points = 0
    if args.target == "k_imag":
        for i in range(1000):
            x = 0.1 + i * (20.0 - 0.1) / 999.0
            res = macdonald_k_imag_eval(1.0, x, rc_cfg)
            evaluations += res.evaluations
            points += 1
    elif args.target == "phi":
        for n in range(1, 9):
            for i in range(20):
                x = 0.5 + i * (10.0 - 0.5) / 19.0
                ev = phi_kernel(n, x, rc_cfg)
                evaluations += ev.evaluations
                points += 1
    else:  # full_roundtrip
        profile = tr.builtin_profile("sin")
        report = tr.roundtrip_report(
            profile, KernelFamily.PRODUCT, 4, (0.5, 1.0, 2.0), rc_cfg
        )
        points = len(report.grid)
    wall = time.perf_counter() - t0
    _emit(
        _json_dump(
            {
                "report_version": REPORT_VERSION,
                "command": "bench",
                "target": args.target,
                "wall_seconds": wall,
                "evaluations": evaluations,
                "points": points,
                "tolerances": _tol_dict(rc_cfg),
            }
        ),
        args.out,
    )
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="discrete-lebedev", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, profile=False, nmax=False):
        p.add_argument("--tol-abs", type=float, default=None, dest="tol_abs")
        p.add_argument("--tol-rel", type=float, default=None, dest="tol_rel")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        if grid:
            p.add_argument("--x", default=None, help="comma-separated x values")
            p.add_argument("--x-grid", default=None, dest="x_grid",
                           help="start:stop:count")
        if profile:
            p.add_argument("--profile", required=True,
                           help="sin[:amp] | cos[:amp] | sawtooth[:amp] | zero | "
                                "fourier:b1,b2,... | sampled:PATH")
        if nmax:
            p.add_argument("--n-max", type=int, default=None, dest="n_max")

    p = sub.add_parser("kernel", help="evaluate a kernel on an x grid")
    p.add_argument("--family", required=True, choices=("phi", "psi", "product", "squared"))
    p.add_argument("--n", type=int, required=True)
    common(p, grid=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("coeffs", help="transform coefficients of a profile")
    p.add_argument("--family", required=True, choices=("product", "squared"))
    common(p, profile=True, nmax=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("reconstruct", help="round-trip reconstruction report")
    p.add_argument("--family", required=True, choices=("product", "squared"))
    common(p, grid=True, profile=True, nmax=True)
    p.set_defaults(func=cmd_reconstruct, format="json")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=("identities", "biorthogonality", "roundtrip", "bounds", "all"))
    common(p)
    p.set_defaults(func=cmd_verify, format="json")

    p = sub.add_parser("bench", help="timing smoke benchmarks")
    p.add_argument("--target", required=True,
                   choices=("k_imag", "phi", "full_roundtrip"))
    common(p)
    p.set_defaults(func=cmd_bench, format="json")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except NonConvergenceError as exc:
        sys.stderr.write(f"partial convergence: {exc}\n")
        return EXIT_PARTIAL
    except QuadratureError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
