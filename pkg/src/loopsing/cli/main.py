"""Pipeline orchestration and the command-line entry point.

Checks run in dependency order (parse, loop functional, structural checks,
Milnor number, cohomology); cohomology is skipped when the singularity turns
out not to be isolated.  Exit status 0 means every enabled check passed,
1 means some check failed or was skipped, 2 means the configuration or the
input expression was invalid.

The environment variable LOOPSING_CACHE may name a directory used to memoize
Groebner bases keyed by a content hash of the generators.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from .. import cohom, grobner
from ..exactalg import LoopPoly
from ..loopfun import (
    DegreeTooLow,
    InputFunction,
    NotHomogeneous,
    check_derivative_identity,
    check_support_bound,
    check_top_linearity,
    jet_coefficient,
    minimal_window,
)
from .parser import ParseError, format_function, loop_poly_string, parse_function, read_function_file
from .report import CHECK_NAMES, CheckOutcome, CohomologySection, Report

__all__ = ["RunConfig", "ConfigError", "run", "main"]

CACHE_ENV_VAR = "LOOPSING_CACHE"


class ConfigError(ValueError):
    """Invalid run configuration (not a check failure)."""


@dataclass
class RunConfig:
    function_source: str
    source_is_file: bool = False
    window_bottom: int = 1
    n_max: int = 4
    checks: tuple[str, ...] = CHECK_NAMES
    output_format: str = "text"
    output_path: str | None = None
    emit_lambda: bool = False
    cache_dir: str | None = None

    def validate(self) -> None:
        if not self.checks:
            raise ConfigError("at least one check must be enabled")
        unknown = [name for name in self.checks if name not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if self.window_bottom < 0:
            raise ConfigError("window bottom must be nonnegative")
        if self.window_bottom < 1 and (
            "linearity" in self.checks or "derivative" in self.checks
        ):
            raise ConfigError("linearity and derivative checks need window >= 1")
        if self.n_max < 1:
            raise ConfigError("n-max must be positive")
        if "cohomology" in self.checks and self.n_max < max(2, self.window_bottom):
            raise ConfigError("n-max must be >= 2 and >= the window bottom")
        if self.output_format not in ("text", "structured"):
            raise ConfigError(f"unknown output format {self.output_format!r}")


def _ordered(checks: Sequence[str]) -> tuple[str, ...]:
    return tuple(name for name in CHECK_NAMES if name in checks)


def run(config: RunConfig) -> Report:
    """Execute the enabled checks and assemble a report."""
    config.validate()
    started = time.perf_counter()

    source = (
        read_function_file(config.function_source)
        if config.source_is_file
        else config.function_source
    )
    func = parse_function(source)
    bottom = config.window_bottom
    window = minimal_window(func, bottom)
    enabled = _ordered(config.checks)

    checks: dict[str, CheckOutcome] = {}
    lam: LoopPoly | None = None
    lambda_terms: int | None = None
    lambda_string: str | None = None
    needs_lambda = any(
        name in enabled for name in ("lambda", "support", "linearity", "derivative")
    )
    if needs_lambda:
        lam = jet_coefficient(func, window, 0)
        lambda_terms = len(lam)
        if config.emit_lambda:
            lambda_string = loop_poly_string(lam, func.names)

    if "lambda" in enabled:
        checks["lambda"] = _lambda_check(func, lam)
    if "support" in enabled:
        report = check_support_bound(func, bottom)
        checks["support"] = CheckOutcome(
            ok=report.ok,
            witness=None
            if report.ok
            else f"conformal degree {report.max_cdeg_present} exceeds bound {report.bound}",
        )
    if "linearity" in enabled:
        report = check_top_linearity(func, bottom)
        checks["linearity"] = CheckOutcome(
            ok=report.ok,
            witness=None
            if report.ok
            else "nonlinear monomial "
            + ", ".join(str(m) for m in report.offending_monomials),
        )
    if "derivative" in enabled:
        report = check_derivative_identity(func, bottom)
        bad = [c.coord for c in report.checks if not c.ok]
        checks["derivative"] = CheckOutcome(
            ok=report.ok,
            witness=None if report.ok else f"identity fails for coordinates {bad}",
        )

    mu: int | None = None
    isolated: bool | None = None
    needs_mu = "milnor" in enabled or "cohomology" in enabled
    if needs_mu:
        try:
            mu = grobner.milnor_number(func, cache_dir=config.cache_dir)
            isolated = True
        except grobner.NotIsolated as exc:
            isolated = False
            if "milnor" in enabled:
                checks["milnor"] = CheckOutcome(ok=False, witness=str(exc))
            if "cohomology" in enabled:
                checks["cohomology"] = CheckOutcome(
                    ok=False,
                    skipped=True,
                    witness="skipped: singularity is not isolated",
                )
        if isolated and "milnor" in enabled:
            checks["milnor"] = _milnor_check(func, mu)

    cohomology_section: CohomologySection | None = None
    axioms: tuple[str, ...] = ()
    if "cohomology" in enabled and isolated and mu is not None:
        outcome, cohomology_section, axioms = _cohomology_check(func, mu, config.n_max)
        checks["cohomology"] = outcome

    ordered_checks = {name: checks[name] for name in CHECK_NAMES if name in checks}
    return Report(
        function=format_function(func),
        d=func.d,
        delta=func.delta,
        window=window,
        milnor_number=mu,
        isolated=isolated,
        lambda_term_count=lambda_terms,
        lambda_polynomial=lambda_string,
        checks=ordered_checks,
        cohomology=cohomology_section,
        axioms=axioms,
        timing_seconds=time.perf_counter() - started,
    )


def _lambda_check(func: InputFunction, lam: LoopPoly | None) -> CheckOutcome:
    assert lam is not None
    for mono, _ in lam.terms:
        if mono.weight(lambda v: v.cdeg) != 0:
            return CheckOutcome(ok=False, witness=f"monomial {mono} has nonzero conformal weight")
        if mono.degree != func.delta:
            return CheckOutcome(ok=False, witness=f"monomial {mono} has degree != {func.delta}")
    restricted = lam.zero_out(lambda v: v.cdeg != 0)
    if restricted != func.poly:
        return CheckOutcome(ok=False, witness="constant-loop restriction does not recover the input")
    return CheckOutcome(ok=True)


def _milnor_check(func: InputFunction, mu: int) -> CheckOutcome:
    expected = (func.delta - 1) ** func.d
    if mu != expected:
        return CheckOutcome(ok=False, witness=f"mu = {mu} != (delta-1)^d = {expected}")
    if func.d <= 3 and func.delta <= 5:
        oracle = grobner.milnor_number_oracle(func)
        if oracle != mu:
            return CheckOutcome(
                ok=False, witness=f"linear-algebra oracle gives {oracle}, basis count gives {mu}"
            )
    return CheckOutcome(ok=True)


def _cohomology_check(
    func: InputFunction, mu: int, n_max: int
) -> tuple[CheckOutcome, CohomologySection | None, tuple[str, ...]]:
    d = func.d
    try:
        truncations = tuple(
            (n, cohom.truncation_cohomology(d, mu, n)) for n in range(n_max + 1)
        )
        renormalized = cohom.renormalized_nearby_cohomology(d, mu, n_max)
        escape = cohom.escape_table(d, mu, n_max)
    except (cohom.Inconsistent, cohom.NotStabilized, RuntimeError) as exc:
        return CheckOutcome(ok=False, witness=str(exc)), None, ()

    section = CohomologySection(
        truncations=truncations,
        renormalized=renormalized.stable,
        stabilization=dict(renormalized.stabilization_step),
        escape=escape,
    )
    expected = cohom.GradedDims({d - 1: mu})
    if renormalized.stable != expected:
        outcome = CheckOutcome(
            ok=False,
            witness=f"renormalized cohomology {renormalized.stable} != {expected}",
        )
    else:
        degrees = [row.degree for row in escape]
        increasing = all(b - a == 2 * d for a, b in zip(degrees, degrees[1:]))
        outcome = (
            CheckOutcome(ok=True)
            if increasing
            else CheckOutcome(ok=False, witness=f"escape degrees {degrees} not in steps of 2d")
        )
    return outcome, section, renormalized.axioms


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopsing",
        description=(
            "Compute the loop functional of a homogeneous polynomial with "
            "isolated singularity, verify its structural identities, and "
            "solve the Gysin tower for its renormalized nearby cohomology."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("-f", "--function", help="input expression, e.g. 'x^3 + y^3'")
    source.add_argument("--file", help="file holding one expression (# comments allowed)")
    parser.add_argument(
        "--window", type=int, default=1, metavar="B",
        help="pole-order bound: conformal degrees start at -B (default 1)",
    )
    parser.add_argument(
        "--n-max", type=int, default=4, metavar="N",
        help="height of the cohomology tower (default 4)",
    )
    parser.add_argument(
        "--checks", default=",".join(CHECK_NAMES), metavar="LIST",
        help=f"comma-separated subset of: {', '.join(CHECK_NAMES)} (default all)",
    )
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text",
        help="output format (structured = JSON)",
    )
    parser.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    parser.add_argument(
        "--emit-lambda", action="store_true",
        help="include the full loop functional in the report (grows quickly)",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_arg_parser().parse_args(argv)
    cache_dir = os.environ.get(CACHE_ENV_VAR)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)

    config = RunConfig(
        function_source=args.function if args.function is not None else args.file,
        source_is_file=args.function is None,
        window_bottom=args.window,
        n_max=args.n_max,
        checks=tuple(name.strip() for name in args.checks.split(",") if name.strip()),
        output_format=args.format,
        output_path=args.output,
        emit_lambda=args.emit_lambda,
        cache_dir=cache_dir or None,
    )

    try:
        report = run(config)
    except (ConfigError, ParseError, NotHomogeneous, DegreeTooLow, OSError) as exc:
        print(f"loopsing: error: {exc}", file=sys.stderr)
        return 2

    rendered = report.to_json() if config.output_format == "structured" else report.to_text()
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return report.exit_status
