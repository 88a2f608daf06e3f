"""Verification records and their serializations.

A record is one checked claim: an identifier, the parameters it was
checked at, the expected and computed values as exact strings, and a
status.  Values are serialized as decimal integers or p/q rationals so
reports survive round-trips without floating point anywhere.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return str(v)


@dataclass(frozen=True)
class VerificationRecord:
    claim: str
    params: dict
    expected: str
    computed: str
    status: str  # "pass" | "fail" | "skipped"
    elapsed_ms: int = 0

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": {k: format_value(v) for k, v in sorted(self.params.items())},
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
        }


def check(claim: str, params: dict, expected, computed, elapsed_ms: int = 0) -> VerificationRecord:
    """Build a record; status is decided by exact string equality."""
    e = format_value(expected)
    c = format_value(computed)
    return VerificationRecord(
        claim=claim,
        params=params,
        expected=e,
        computed=c,
        status="pass" if e == c else "fail",
        elapsed_ms=elapsed_ms,
    )


def skipped(claim: str, params: dict, reason: str) -> VerificationRecord:
    return VerificationRecord(
        claim=claim,
        params=params,
        expected="",
        computed=reason,
        status="skipped",
    )


def _params_text(params: dict) -> str:
    return ",".join(f"{k}={format_value(v)}" for k, v in sorted(params.items()))


def render_json(records: list[VerificationRecord]) -> str:
    return json.dumps([r.as_dict() for r in records], indent=2, sort_keys=True) + "\n"


def render_csv(records: list[VerificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "params", "expected", "computed", "status", "elapsed_ms"])
    for r in records:
        w.writerow(
            [r.claim, _params_text(r.params), r.expected, r.computed, r.status, r.elapsed_ms]
        )
    return buf.getvalue()


def render_text(records: list[VerificationRecord]) -> str:
    headers = ["claim", "params", "expected", "computed", "status"]
    table = [
        [r.claim, _params_text(r.params), r.expected, r.computed, r.status]
        for r in records
    ]
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in table)) if table else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in table:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(row))).rstrip())
    passes = sum(r.status == "pass" for r in records)
    fails = sum(r.status == "fail" for r in records)
    skips = sum(r.status == "skipped" for r in records)
    lines.append("")
    lines.append(f"{passes} pass, {fails} fail, {skips} skipped")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


__all__ = [
    "RENDERERS",
    "VerificationRecord",
    "check",
    "format_value",
    "render_csv",
    "render_json",
    "render_text",
    "skipped",
]
