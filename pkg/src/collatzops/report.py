"""Structured pass/fail records shared by every verification suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class VerificationReport:
    """One identity check: what ran, at which degrees, and how close to zero.

    PASS requires the residual to be exactly zero in EXACT mode or within
    the declared tolerance in FLOAT mode; FAIL carries at least one witness.
    """

    suite: str
    parameters: dict
    status: str
    residual: object  # "0" for exact zero, otherwise a float magnitude
    degrees_checked: str
    arithmetic: str  # "EXACT" | "FLOAT"
    elapsed: float = 0.0
    tolerance: float | None = None
    witness: dict | None = None
    skip_reason: str | None = None
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "parameters": self.parameters,
            "status": self.status,
            "residual": self.residual,
            "degrees_checked": self.degrees_checked,
            "arithmetic": self.arithmetic,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "skip_reason": self.skip_reason,
            "info": self.info,
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        bits = [f"[{self.status}]", self.suite]
        if params:
            bits.append(params)
        bits.append(f"residual={self.residual}")
        bits.append(f"degrees={self.degrees_checked}")
        bits.append(f"({self.arithmetic}, {self.elapsed:.3f}s)")
        if self.skip_reason:
            bits.append(f"reason={self.skip_reason}")
        return " ".join(bits)


def exact_report(suite, parameters, is_zero, max_abs, degrees_checked,
                 witness=None, info=None, elapsed=0.0) -> VerificationReport:
    """Report for an EXACT-mode check: PASS iff the residual is exactly zero."""
    return VerificationReport(
        suite=suite,
        parameters=parameters,
        status=PASS if is_zero else FAIL,
        residual="0" if is_zero else max_abs,
        degrees_checked=degrees_checked,
        arithmetic="EXACT",
        tolerance=0.0,
        witness=None if is_zero else witness,
        info=info or {},
        elapsed=elapsed,
    )


def float_report(suite, parameters, max_abs, tolerance, degrees_checked,
                 witness=None, info=None, elapsed=0.0) -> VerificationReport:
    """Report for a FLOAT-mode check: PASS iff residual <= tolerance."""
    ok = max_abs <= tolerance
    return VerificationReport(
        suite=suite,
        parameters=parameters,
        status=PASS if ok else FAIL,
        residual=max_abs,
        degrees_checked=degrees_checked,
        arithmetic="FLOAT",
        tolerance=tolerance,
        witness=None if ok else witness,
        info=info or {},
        elapsed=elapsed,
    )


def skipped_report(suite, parameters, reason) -> VerificationReport:
    return VerificationReport(
        suite=suite,
        parameters=parameters,
        status=SKIPPED,
        residual=None,
        degrees_checked="",
        arithmetic="EXACT",
        skip_reason=reason,
    )


def compare_series_report(suite, parameters, got, want, through,
                          exclude=(), info=None) -> VerificationReport:
    """Coefficientwise comparison of two series on exponents <= through.

    ``exclude`` lists exponents left out of the comparison (they are still
    recorded, with both values, in the report's info block).
    """
    excluded = set(exclude)
    mismatches = []
    for n in sorted(set(got.coeffs) | set(want.coeffs)):
        if n > through or n in excluded:
            continue
        a, b = got.coefficient(n), want.coefficient(n)
        if a != b:
            mismatches.append((n, a, b))
    info = dict(info or {})
    if excluded:
        info["excluded_cells"] = [
            {
                "exponent": n,
                "got": str(got.coefficient(n)),
                "want": str(want.coefficient(n)),
                "equal": got.coefficient(n) == want.coefficient(n),
            }
            for n in sorted(excluded)
            if n <= through
        ]
    witness = None
    if mismatches:
        n, a, b = mismatches[0]
        witness = {"exponent": n, "got": str(a), "want": str(b)}
    max_abs = max((abs(a - b) for _, a, b in mismatches), default=0.0)
    return exact_report(
        suite,
        parameters,
        is_zero=not mismatches,
        max_abs=max_abs,
        degrees_checked=f"0..{through}",
        witness=witness,
        info=info,
    )


def save_reports(reports, path, include_elapsed: bool = True):
    """Write reports as one deterministic JSON document.

    Byte-identical for identical inputs and flags, modulo the elapsed field
    (drop it via include_elapsed=False for strict comparisons).
    """
    payload = {
        "reports": [r.to_dict(include_elapsed=include_elapsed) for r in reports],
        "summary": summarize(reports),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def summarize(reports) -> dict:
    return {
        "pass": sum(1 for r in reports if r.status == PASS),
        "fail": sum(1 for r in reports if r.status == FAIL),
        "skipped": sum(1 for r in reports if r.status == SKIPPED),
    }
