"""Verification outcomes and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

Residue = Union[int, tuple, None]


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of one check at one prime.

    ``lhs`` and ``rhs`` are residues modulo p^modulus_exponent, or tuples of
    them for checks that assert several quantities at once.  A PASS always
    has lhs == rhs; a check may additionally fail on a side condition, in
    which case ``reason`` says which.
    """

    check_id: str
    p: int
    modulus_exponent: int
    lhs: Residue
    rhs: Residue
    method: str
    achieved_precision: int
    verdict: Verdict
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "p": self.p,
            "modulus_exponent": self.modulus_exponent,
            "lhs": _ser(self.lhs),
            "rhs": _ser(self.rhs),
            "method": self.method,
            "achieved_precision": self.achieved_precision,
            "verdict": self.verdict.value,
            "reason": self.reason,
        }


def _ser(x: Residue):
    if x is None:
        return None
    if isinstance(x, tuple):
        return [_ser(v) for v in x]
    return str(int(x))


def compare(check_id: str, p: int, k: int, lhs: Residue, rhs: Residue, method: str,
            achieved: int, side_ok: bool = True, reason: str = "") -> CongruenceReport:
    """Build a PASS/FAIL report from already-reduced residues."""
    ok = lhs is not None and lhs == rhs and achieved >= k and side_ok
    if not ok and not reason:
        if achieved < k:
            reason = f"only p^{achieved} certified"
        elif lhs != rhs:
            reason = "lhs != rhs"
    verdict = Verdict.PASS if ok else Verdict.FAIL
    return CongruenceReport(check_id, p, k, lhs, rhs, method, achieved, verdict, reason)


def skipped(check_id: str, p: int, reason: str, k: int = 0) -> CongruenceReport:
    return CongruenceReport(check_id, p, k, None, None, "-", 0, Verdict.SKIPPED, reason)


def summarize(reports: Iterable[CongruenceReport]) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        out[r.verdict.value.lower()] += 1
    return out


def to_json_document(reports: Sequence[CongruenceReport], config: dict,
                     tool_version: str) -> str:
    doc = {
        "tool_version": tool_version,
        "config": config,
        "reports": [r.to_json() for r in reports],
        "summary": summarize(reports),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


CSV_FIELDS = ("check_id", "p", "modulus_exponent", "lhs", "rhs", "method",
              "achieved_precision", "verdict", "reason")


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, list):
        return ";".join(_csv_cell(v) for v in x)
    return str(x)


def to_csv_document(reports: Sequence[CongruenceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        row = r.to_json()
        w.writerow([_csv_cell(row[f]) for f in CSV_FIELDS])
    return buf.getvalue()


def parse_residue(x: Optional[Union[str, list]]) -> Residue:
    """Inverse of the JSON residue encoding."""
    if x is None:
        return None
    if isinstance(x, list):
        return tuple(parse_residue(v) for v in x)
    return int(x)
