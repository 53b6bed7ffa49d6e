"""Command-line front end: ``verify``, ``matrix`` and ``oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .errors import BadCongruenceClass, UnknownCheckId
from .kernels import Kind, build_dpab, build_kernel
from .oracles import ORACLE_RUNNERS
from .permanent import RYSER_CAP
from .report import Verdict, summarize, to_csv_document, to_json_document
from .ring import is_prime
from .theorems import DET_CAP, Budgets, resolve_check_ids, run_suite
from .linalg import DEFAULT_GUARD

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_prime_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad prime range {text!r}; expected LO..HI") from None


def _split_ids(values: Sequence[str]) -> list[str]:
    return [x for v in values for x in v.split(",") if x]


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError(f"--{name} must be positive")
    return value


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    ids = resolve_check_ids(_split_ids(args.checks))
    lo, hi = parse_prime_range(args.primes)
    budgets = Budgets(
        ryser_cap=_positive("ryser-cap", args.ryser_cap),
        det_cap=_positive("det-cap", args.det_cap),
        guard=_positive("guard", args.guard),
    )
    jobs = _positive("jobs", args.jobs)
    reports = run_suite((lo, hi), ids, budgets, jobs)
    # --jobs and --out do not affect results and stay out of the document
    config = {
        "checks": ids,
        "primes": [lo, hi],
        "ryser_cap": budgets.ryser_cap,
        "det_cap": budgets.det_cap,
        "guard": budgets.guard,
    }
    if args.format == "json":
        text = to_json_document(reports, config, __version__)
    else:
        text = to_csv_document(reports)
    _write(text, args.out)
    s = summarize(reports)
    print(f"pass={s['pass']} fail={s['fail']} skipped={s['skipped']}", file=sys.stderr)
    for r in reports:
        if r.verdict is Verdict.FAIL:
            print(f"FAIL {r.check_id} p={r.p}: {r.reason}", file=sys.stderr)
    return EXIT_FAIL if s["fail"] else EXIT_OK


def cmd_matrix(args) -> int:
    p = args.prime
    if p < 3 or not is_prime(p):
        raise UsageError(f"--prime must be an odd prime, got {p}")
    kind = Kind(args.kind)
    if kind is Kind.DPAB:
        if args.a is None or args.b is None:
            raise UsageError("--kind dpab needs --a and --b")
        if args.precision != 1:
            raise UsageError("D_p(a,b) is defined modulo p only; use --precision 1")
        M = build_dpab(p, args.a, args.b)
    else:
        M = build_kernel(kind, p, _positive("precision", args.precision))
    _write(json.dumps(M.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    passed, total = ORACLE_RUNNERS[args.which](args.trials, args.seed)
    print(f"{args.which}: {passed}/{total} passed (seed {args.seed})")
    return EXIT_OK if passed == total else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="detper",
        description="Verify determinant and permanent congruences of kernel matrices mod p^K.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification sweep and write a report")
    v.add_argument("--checks", nargs="+", default=["all"],
                   help="check ids (space or comma separated) or 'all'")
    v.add_argument("--primes", default="3..100", help="inclusive range LO..HI (default 3..100)")
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--ryser-cap", type=int, default=RYSER_CAP)
    v.add_argument("--det-cap", type=int, default=DET_CAP)
    v.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="dump a kernel matrix as JSON")
    m.add_argument("--kind", required=True,
                   choices=[k.value for k in Kind if not k.value.startswith("generic")])
    m.add_argument("--prime", type=int, required=True)
    m.add_argument("--precision", type=int, default=1)
    m.add_argument("--a", type=int)
    m.add_argument("--b", type=int)
    m.add_argument("--out")
    m.set_defaults(func=cmd_matrix)

    o = sub.add_parser("oracle", help="run a seeded randomized oracle suite")
    o.add_argument("--which", required=True, choices=sorted(ORACLE_RUNNERS))
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownCheckId, BadCongruenceClass, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"detper {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
