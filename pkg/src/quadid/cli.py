"""Command line driver: every verification suite as a subcommand.

JSON report on stdout, one-line summary on stderr, exit status 1 when any
check failed (2 for usage errors such as an exceeded size cap).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .extend import PressedAssignment, build_weights, extend_f0, reconstruct, verify_wcast, DivisionFailure
from .grid import ExtendedGrid, enumerate_flows, flow_weight, path_matrix
from .identities import QISyntaxError, evaluate_qi, family_instances, is_homogeneous, parse_qi
from .ncalg import AlgebraElement
from .qminor import all_corteges, generic_qmatrix, manin_violations, quantum_minor

DEFAULT_CAP = 4
FAMILY_CHOICES = ["plucker", "coplucker", "dodgson", "qc", "all"]


class CapExceeded(ValueError):
    pass


@dataclass
class Report:
    suite: str
    parameters: dict[str, Any]
    instances: int = 0
    failures: list[dict[str, str]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, instance: str, residual: Any) -> None:
        self.failures.append({"instance": instance, "residual": str(residual)})

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["failures"] = sorted(self.failures, key=lambda f: (f["instance"], f["residual"]))
        out["passed"] = self.passed
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite} {self.parameters}: {self.instances} instances, {len(self.failures)} failures, {self.duration:.2f}s"


def _check_cap(m: int, n: int, cap: int) -> None:
    if m < 1 or n < 1:
        raise CapExceeded("m and n must be positive")
    if m > cap or n > cap:
        raise CapExceeded(f"{m}x{n} exceeds the size cap {cap}; pass --cap to raise it")


def _timed(report: Report, start: float) -> Report:
    report.duration = time.perf_counter() - start
    return report


def run_verify_identities(m: int, n: int, family: str = "all", cap: int = DEFAULT_CAP) -> Report:
    _check_cap(m, n, cap)
    start = time.perf_counter()
    report = Report("verify-identities", {"m": m, "n": n, "family": family})
    X = generic_qmatrix(m, n)
    counts: dict[str, int] = {}
    for name, e in family_instances(family, m, n):
        counts[name] = counts.get(name, 0) + 1
        report.instances += 1
        res = evaluate_qi(e, X)
        if res:
            report.fail(f"{name}: {e}", res)
        if not is_homogeneous(e):
            report.fail(f"{name}: {e}", "inhomogeneous")
    report.details["per_family"] = counts
    return _timed(report, start)


def run_lindstrom(m: int, n: int, cap: int = DEFAULT_CAP) -> Report:
    _check_cap(m, n, cap)
    start = time.perf_counter()
    report = Report("lindstrom", {"m": m, "n": n})
    g = ExtendedGrid(m, n)
    P = path_matrix(g)
    for c in all_corteges(m, n):
        report.instances += 1
        total = AlgebraElement.zero(g.torus)
        for f in enumerate_flows(g, c):
            total = total + flow_weight(g, f)
        res = quantum_minor(P, c) - total
        if res:
            report.fail(f"cortege {c}", res)
    manin = manin_violations(P)
    report.instances += 1
    for name, idx, res in manin:
        report.fail(f"manin {name} {idx}", res)
    report.details["manin_violations"] = len(manin)
    return _timed(report, start)


def run_extend(m: int, n: int, cap: int = DEFAULT_CAP) -> tuple[Report, dict[str, str] | None]:
    _check_cap(m, n, cap)
    start = time.perf_counter()
    report = Report("extend", {"m": m, "n": n, "mode": "generic"})
    pa = PressedAssignment.generic(m, n)
    weights = build_weights(pa)
    wcast = verify_wcast(weights, pa)
    report.details["wcast_violations"] = len(wcast)
    for f in wcast:
        report.fail(f"wcast {f.u} {f.v} clause ({f.clause})", f.residual)
    if wcast:
        return _timed(report, start), None
    table = extend_f0(pa)
    restriction_ok = True
    for c in pa.corteges:
        report.instances += 1
        if table[c] != pa[c]:
            restriction_ok = False
            report.fail(f"restriction {c}", table[c] - pa[c])
    report.details["restriction_ok"] = restriction_ok
    fam = 0
    for name, e in family_instances("all", m, n):
        report.instances += 1
        fam += 1
        res = evaluate_qi(e, table)
        if res:
            report.fail(f"{name} on table: {e}", res)
    report.details["family_instances"] = fam
    return _timed(report, start), table.to_json()


def run_reconstruct(m: int, n: int, cap: int = DEFAULT_CAP) -> Report:
    _check_cap(m, n, cap)
    start = time.perf_counter()
    report = Report("reconstruct", {"m": m, "n": n, "mode": "generic"})
    pa = PressedAssignment.generic(m, n)
    table = extend_f0(pa)
    trace: list = []
    try:
        rebuilt = reconstruct(table.restrict_to_pint(), pa.torus, m, n, trace=trace)
    except DivisionFailure as exc:
        report.fail("reconstruction", exc)
        return _timed(report, start)
    for c in table:
        report.instances += 1
        if rebuilt[c] != table[c]:
            report.fail(f"cortege {c}", rebuilt[c] - table[c])
    cases: dict[str, int] = {}
    for step in trace:
        cases[str(step.case)] = cases.get(str(step.case), 0) + 1
    report.details["divisions"] = len(trace)
    report.details["divisions_by_case"] = cases
    return _timed(report, start)


def run_eval(text: str, m: int | None = None, n: int | None = None, cap: int = DEFAULT_CAP) -> Report:
    start = time.perf_counter()
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    exprs = [parse_qi(ln, m, n) for ln in lines]
    report = Report("eval", {"m": m, "n": n})
    results = []
    matrices: dict[tuple[int, int], Any] = {}
    for e in exprs:
        _check_cap(e.m, e.n, cap)
        X = matrices.get((e.m, e.n))
        if X is None:
            X = matrices[(e.m, e.n)] = generic_qmatrix(e.m, e.n)
        res = evaluate_qi(e, X)
        report.instances += 1
        results.append({"expression": str(e), "m": e.m, "n": e.n, "homogeneous": is_homogeneous(e), "residual": str(res)})
        if res:
            report.fail(str(e), res)
    report.details["expressions"] = results
    return _timed(report, start)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadid", description="Quadratic identities on quantum minors.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, dims_required=True):
        p.add_argument("--m", type=int, required=dims_required, default=None)
        p.add_argument("--n", type=int, required=dims_required, default=None)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest allowed m or n")
        p.add_argument("--json-out", type=Path, default=None, help="also write the report here")

    p = sub.add_parser("verify-identities", help="evaluate identity families on the generic matrix")
    common(p)
    p.add_argument("--family", choices=FAMILY_CHOICES, default="all")
    common(sub.add_parser("lindstrom", help="path-matrix minors versus flow sums"))
    p = sub.add_parser("extend", help="extend generic pressed values to a QI-function")
    common(p)
    p.add_argument("--table-out", type=Path, default=None, help="write the extended table as JSON")
    common(sub.add_parser("reconstruct", help="rebuild the extended table from pressed values"))
    p = sub.add_parser("eval", help="evaluate expressions from a file on the generic matrix")
    common(p, dims_required=False)
    p.add_argument("--expr-file", type=Path, required=True)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap > DEFAULT_CAP:
        print(f"warning: size cap raised to {args.cap}; large suites may run for a long time", file=sys.stderr)
    try:
        if args.command == "verify-identities":
            report = run_verify_identities(args.m, args.n, args.family, args.cap)
        elif args.command == "lindstrom":
            report = run_lindstrom(args.m, args.n, args.cap)
        elif args.command == "extend":
            report, table = run_extend(args.m, args.n, args.cap)
            if args.table_out and table is not None:
                args.table_out.write_text(json.dumps(table, indent=2, sort_keys=True) + "\n")
        elif args.command == "reconstruct":
            report = run_reconstruct(args.m, args.n, args.cap)
        else:
            report = run_eval(args.expr_file.read_text(), args.m, args.n, args.cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QISyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    payload = json.dumps(report.to_json(), indent=2, sort_keys=True)
    print(payload)
    if args.json_out:
        args.json_out.write_text(payload + "\n")
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
