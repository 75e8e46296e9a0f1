"""Report assembly: structured (JSON) and fixed-layout text output.

The structured document has top-level keys function, d, delta, milnor_number,
isolated, window, lambda, checks, cohomology, axioms, timing.  Degree-indexed
maps use decimal-string keys so that negative degrees survive serialization
unambiguously.  Reports are deterministic: two runs on the same configuration
produce byte-identical documents apart from the timing field.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Mapping

from ..cohom import EscapeRow, GradedDims
from ..loopfun import Window

__all__ = [
    "CHECK_NAMES",
    "CheckOutcome",
    "CohomologySection",
    "Report",
    "REPORT_SCHEMA",
    "validate_report",
]

# Dependency order; reports always list checks this way.
CHECK_NAMES = ("lambda", "support", "linearity", "derivative", "milnor", "cohomology")


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    witness: str | None = None
    skipped: bool = False


@dataclass(frozen=True)
class CohomologySection:
    truncations: tuple[tuple[int, GradedDims], ...]
    renormalized: GradedDims
    stabilization: Mapping[int, int]
    escape: tuple[EscapeRow, ...]


@dataclass(frozen=True)
class Report:
    function: str
    d: int
    delta: int
    window: Window
    milnor_number: int | None
    isolated: bool | None
    lambda_term_count: int | None
    lambda_polynomial: str | None
    checks: Mapping[str, CheckOutcome]
    cohomology: CohomologySection | None
    axioms: tuple[str, ...]
    timing_seconds: float = field(compare=False, default=0.0)

    @property
    def ok(self) -> bool:
        return all(c.ok and not c.skipped for c in self.checks.values())

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict[str, Any]:
        checks = {}
        for name in CHECK_NAMES:
            if name not in self.checks:
                continue
            outcome = self.checks[name]
            entry: dict[str, Any] = {"ok": outcome.ok}
            if outcome.witness is not None:
                entry["witness"] = outcome.witness
            if outcome.skipped:
                entry["skipped"] = True
            checks[name] = entry

        lam = None
        if self.lambda_term_count is not None:
            lam = {"term_count": self.lambda_term_count}
            if self.lambda_polynomial is not None:
                lam["polynomial"] = self.lambda_polynomial

        cohomology = None
        if self.cohomology is not None:
            cohomology = {
                "truncations": [
                    {"n": n, "dims": _dims_dict(dims)}
                    for n, dims in self.cohomology.truncations
                ],
                "renormalized": _dims_dict(self.cohomology.renormalized),
                "stabilization": {
                    str(degree): step
                    for degree, step in sorted(self.cohomology.stabilization.items())
                },
                "escape": [
                    {
                        "n": row.n,
                        "degree": row.degree,
                        "declared_floor": row.declared_floor,
                    }
                    for row in self.cohomology.escape
                ],
            }

        return {
            "function": self.function,
            "d": self.d,
            "delta": self.delta,
            "window": {"bottom": self.window.bottom, "top": self.window.top},
            "milnor_number": self.milnor_number,
            "isolated": self.isolated,
            "lambda": lam,
            "checks": checks,
            "cohomology": cohomology,
            "axioms": list(self.axioms),
            "timing": {"seconds": self.timing_seconds},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []

        def row(label: str, value: Any) -> None:
            lines.append(f"{label:<18}{value}")

        row("function", self.function)
        row("d", self.d)
        row("delta", self.delta)
        row("window", self.window)
        row("milnor_number", "-" if self.milnor_number is None else self.milnor_number)
        row("isolated", "-" if self.isolated is None else ("yes" if self.isolated else "no"))
        if self.lambda_term_count is not None:
            row("lambda", f"{self.lambda_term_count} terms")
            if self.lambda_polynomial is not None:
                row("", self.lambda_polynomial)
        for name in CHECK_NAMES:
            if name not in self.checks:
                continue
            outcome = self.checks[name]
            status = "skipped" if outcome.skipped else ("ok" if outcome.ok else "FAIL")
            if outcome.witness:
                status += f"  ({outcome.witness})"
            row(f"check {name}", status)
        if self.cohomology is not None:
            for n, dims in self.cohomology.truncations:
                row(f"truncation n={n}", dims)
            row("renormalized", self.cohomology.renormalized)
            stab = "; ".join(
                f"{degree}: n={step}"
                for degree, step in sorted(self.cohomology.stabilization.items())
            )
            row("stabilization", stab)
            for entry in self.cohomology.escape:
                row(
                    f"escape n={entry.n}",
                    f"degree {entry.degree} (declared floor {entry.declared_floor})",
                )
        for axiom in self.axioms:
            row("axiom", axiom)
        row("timing", f"{self.timing_seconds:.3f}s")
        return "\n".join(lines) + "\n"


def _dims_dict(dims: GradedDims) -> dict[str, int]:
    return {str(degree): dim for degree, dim in dims.items()}


# Published shape of the structured report.  validate_report is the normative
# checker; this constant documents the same structure declaratively.
REPORT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "function",
        "d",
        "delta",
        "window",
        "milnor_number",
        "isolated",
        "lambda",
        "checks",
        "cohomology",
        "axioms",
        "timing",
    ],
    "properties": {
        "function": {"type": "string"},
        "d": {"type": "integer", "minimum": 1},
        "delta": {"type": "integer", "minimum": 2},
        "window": {
            "type": "object",
            "required": ["bottom", "top"],
            "properties": {
                "bottom": {"type": "integer", "minimum": 0},
                "top": {"type": "integer"},
            },
        },
        "milnor_number": {"type": ["integer", "null"], "minimum": 1},
        "isolated": {"type": ["boolean", "null"]},
        "lambda": {
            "type": ["object", "null"],
            "required": ["term_count"],
            "properties": {
                "term_count": {"type": "integer", "minimum": 0},
                "polynomial": {"type": "string"},
            },
        },
        "checks": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["ok"],
                "properties": {
                    "ok": {"type": "boolean"},
                    "witness": {"type": "string"},
                    "skipped": {"type": "boolean"},
                },
            },
        },
        "cohomology": {
            "type": ["object", "null"],
            "required": ["truncations", "renormalized", "stabilization", "escape"],
            "properties": {
                "truncations": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n", "dims"],
                        "properties": {
                            "n": {"type": "integer", "minimum": 0},
                            "dims": {"$ref": "#/definitions/dims"},
                        },
                    },
                },
                "renormalized": {"$ref": "#/definitions/dims"},
                "stabilization": {
                    "type": "object",
                    "propertyNames": {"pattern": "^-?[0-9]+$"},
                    "additionalProperties": {"type": "integer", "minimum": 0},
                },
                "escape": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n", "degree", "declared_floor"],
                    },
                },
            },
        },
        "axioms": {"type": "array", "items": {"type": "string"}},
        "timing": {
            "type": "object",
            "required": ["seconds"],
            "properties": {"seconds": {"type": "number"}},
        },
    },
    "definitions": {
        "dims": {
            "type": "object",
            "propertyNames": {"pattern": "^-?[0-9]+$"},
            "additionalProperties": {"type": "integer", "minimum": 1},
        },
    },
}

_DEGREE_KEY = re.compile(r"^-?[0-9]+$")


def validate_report(document: Any) -> list[str]:
    """Check a structured report against the published schema.

    Returns a list of problems, empty when the document conforms.
    """
    errors: list[str] = []

    def err(path: str, message: str) -> None:
        errors.append(f"{path}: {message}")

    if not isinstance(document, dict):
        return ["document: not an object"]

    for key in REPORT_SCHEMA["required"]:
        if key not in document:
            err(key, "missing")
    extra = set(document) - set(REPORT_SCHEMA["required"])
    if extra:
        err("document", f"unexpected keys {sorted(extra)}")
    if errors:
        return errors

    if not isinstance(document["function"], str):
        err("function", "not a string")
    for key, minimum in (("d", 1), ("delta", 2)):
        if not isinstance(document[key], int) or document[key] < minimum:
            err(key, f"not an integer >= {minimum}")

    window = document["window"]
    if (
        not isinstance(window, dict)
        or not isinstance(window.get("bottom"), int)
        or not isinstance(window.get("top"), int)
        or window["bottom"] < 0
    ):
        err("window", "not an object with integer bottom >= 0 and top")

    mu = document["milnor_number"]
    if mu is not None and (not isinstance(mu, int) or mu < 1):
        err("milnor_number", "not null or a positive integer")
    if document["isolated"] not in (True, False, None):
        err("isolated", "not a boolean or null")

    lam = document["lambda"]
    if lam is not None:
        if not isinstance(lam, dict) or not isinstance(lam.get("term_count"), int):
            err("lambda", "not null or an object with integer term_count")
        elif set(lam) - {"term_count", "polynomial"}:
            err("lambda", "unexpected keys")
        elif "polynomial" in lam and not isinstance(lam["polynomial"], str):
            err("lambda.polynomial", "not a string")

    checks = document["checks"]
    if not isinstance(checks, dict):
        err("checks", "not an object")
    else:
        for name, entry in checks.items():
            if name not in CHECK_NAMES:
                err(f"checks.{name}", "unknown check name")
                continue
            if not isinstance(entry, dict) or not isinstance(entry.get("ok"), bool):
                err(f"checks.{name}", "not an object with boolean ok")
                continue
            if set(entry) - {"ok", "witness", "skipped"}:
                err(f"checks.{name}", "unexpected keys")
            if "witness" in entry and not isinstance(entry["witness"], str):
                err(f"checks.{name}.witness", "not a string")
            if "skipped" in entry and entry["skipped"] is not True:
                err(f"checks.{name}.skipped", "present but not true")
            if not entry["ok"] and not entry.get("skipped") and "witness" not in entry:
                err(f"checks.{name}", "failed without a witness")

    def check_dims(path: str, value: Any, minimum: int = 1) -> None:
        if not isinstance(value, dict):
            err(path, "not an object")
            return
        for key, dim in value.items():
            if not _DEGREE_KEY.match(key):
                err(f"{path}.{key}", "key is not a decimal integer string")
            if not isinstance(dim, int) or dim < minimum:
                err(f"{path}.{key}", f"value is not an integer >= {minimum}")

    cohomology = document["cohomology"]
    if cohomology is not None:
        if not isinstance(cohomology, dict) or set(cohomology) != {
            "truncations",
            "renormalized",
            "stabilization",
            "escape",
        }:
            err("cohomology", "not null or an object with the four sections")
        else:
            truncations = cohomology["truncations"]
            if not isinstance(truncations, list):
                err("cohomology.truncations", "not an array")
            else:
                for idx, entry in enumerate(truncations):
                    if (
                        not isinstance(entry, dict)
                        or set(entry) != {"n", "dims"}
                        or not isinstance(entry["n"], int)
                    ):
                        err(f"cohomology.truncations[{idx}]", "malformed")
                        continue
                    check_dims(f"cohomology.truncations[{idx}].dims", entry["dims"])
            check_dims("cohomology.renormalized", cohomology["renormalized"])
            check_dims("cohomology.stabilization", cohomology["stabilization"], minimum=0)
            escape = cohomology["escape"]
            if not isinstance(escape, list):
                err("cohomology.escape", "not an array")
            else:
                for idx, entry in enumerate(escape):
                    if (
                        not isinstance(entry, dict)
                        or set(entry) != {"n", "degree", "declared_floor"}
                        or not all(isinstance(entry[k], int) for k in entry)
                    ):
                        err(f"cohomology.escape[{idx}]", "malformed")

    axioms = document["axioms"]
    if not isinstance(axioms, list) or not all(isinstance(a, str) for a in axioms):
        err("axioms", "not an array of strings")

    timing = document["timing"]
    if not isinstance(timing, dict) or not isinstance(timing.get("seconds"), (int, float)):
        err("timing", "not an object with numeric seconds")

    return errors
