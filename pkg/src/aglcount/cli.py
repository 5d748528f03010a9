"""Command-line interface: exact counts and verification suites with
machine-readable reports.

All integers are serialized as decimal strings (results exceed 64 bits),
and apart from the ``elapsed_seconds`` field a report is byte-identical
across runs and parallelism levels.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from .compound import asymptotic_report, check_jordan_block_structure, check_kronecker_embedding, check_rank_bound
from .conjugacy import enumerate_classes
from .formulas import class_equation_total, count_function_classes
from .linalg import GFMatrix
from .numtheory import agl_group_order, is_prime_power
from .oracle import burnside_full, orbit_enumeration
from .reps import verify_class
from .rm import coset_class_count_M, theta

_STR_DIGITS_LIMIT = 4_000_000


@dataclass
class RunReport:
    """One command invocation: parameters, results, and check outcomes."""

    command: str
    parameters: dict
    results: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    status: str = "ok"
    elapsed_seconds: float = 0.0

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "status": "pass" if passed else "fail", "detail": detail})
        if not passed:
            self.status = "fail"

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "checks": self.checks,
            "status": self.status,
            "elapsed_seconds": round(self.elapsed_seconds, 6),
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["command", "key", "value"])
        for key in sorted(self.parameters):
            writer.writerow([self.command, f"param:{key}", self.parameters[key]])
        for key in sorted(self.results):
            writer.writerow([self.command, f"result:{key}", self.results[key]])
        for check in self.checks:
            writer.writerow([self.command, f"check:{check['name']}", check["status"]])
        writer.writerow([self.command, "status", self.status])
        writer.writerow([self.command, "elapsed_seconds", round(self.elapsed_seconds, 6)])
        return buf.getvalue()


def _emit(report: RunReport, args) -> None:
    text = report.to_csv() if args.format == "csv" else report.to_json()
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)


def _progress(args, message: str) -> None:
    if args.verbose:
        print(message, file=sys.stderr, flush=True)


def _cmd_count_functions(args) -> int:
    report = RunReport(
        command="count-functions",
        parameters={"q": str(args.q), "n": str(args.n)},
    )
    if not is_prime_power(args.q) or args.q > 512:
        report.status = "error"
        report.results["error"] = f"q = {args.q} is not a prime power in 2..512"
        _emit(report, args)
        return 2
    if args.n < 0 or args.n > args.max_n:
        report.status = "error"
        report.results["error"] = f"n = {args.n} outside 0..{args.max_n} (raise --max-n to override)"
        _emit(report, args)
        return 2
    start = time.perf_counter()
    _progress(args, f"counting function classes for q={args.q}, n={args.n}")
    callback = (lambda done: _progress(args, f"  {done} class indices folded")) if args.verbose else None
    value = count_function_classes(args.n, args.q, jobs=args.parallelism, progress=callback)
    report.elapsed_seconds = time.perf_counter() - start
    report.results["function_classes"] = str(value)
    if args.n >= 1:
        report.results["group_order"] = str(agl_group_order(args.n, args.q))
        if args.verbose_classes:
            report.results["class_indices"] = str(
                sum(1 for _ in enumerate_classes(args.n, args.q))
            )
    _emit(report, args)
    return 0


def _cmd_count_cosets(args) -> int:
    params = {
        "n": str(args.n),
        "s": "" if args.s is None else str(args.s),
        "r": "" if args.r is None else str(args.r),
        "coset_classes": str(bool(args.coset_classes)),
    }
    report = RunReport(command="count-cosets", parameters=params)
    if args.n < 1 or args.n > args.max_n:
        report.status = "error"
        report.results["error"] = f"n = {args.n} outside 1..{args.max_n} (raise --max-n to override)"
        _emit(report, args)
        return 2
    start = time.perf_counter()
    callback = (lambda done: _progress(args, f"  {done} class indices folded")) if args.verbose else None
    if args.coset_classes:
        if args.n < 2:
            report.status = "error"
            report.results["error"] = "coset classes need n >= 2"
            _emit(report, args)
            return 2
        value = coset_class_count_M(args.n, jobs=args.parallelism, progress=callback)
        report.results["coset_classes"] = str(value)
    else:
        s = 0 if args.s is None else args.s
        r = args.n if args.r is None else args.r
        if not 0 <= s <= r <= args.n:
            report.status = "error"
            report.results["error"] = f"need 0 <= s <= r <= n, got s={s}, r={r}, n={args.n}"
            _emit(report, args)
            return 2
        value = theta(args.n, s, r, jobs=args.parallelism, progress=callback)
        report.results["quotient_classes"] = str(value)
    report.elapsed_seconds = time.perf_counter() - start
    _emit(report, args)
    return 0


def _suite_reps(args, report: RunReport) -> None:
    q = args.q
    checked = 0
    for n in range(1, args.n + 1):
        for idx in enumerate_classes(n, q):
            outcome = verify_class(idx)
            checked += 1
            if not outcome.ok:
                report.add_check(f"reps q={q} n={n}", False, outcome.describe())
                return
        _progress(args, f"verified classes at q={q}, n={n}")
    report.add_check(f"reps q={q} n<={args.n}", True, f"{checked} classes")


def _suite_class_equation(args, report: RunReport) -> None:
    q = args.q
    for n in range(1, args.n + 1):
        total = class_equation_total(n, q)
        group = agl_group_order(n, q)
        report.add_check(
            f"class-equation q={q} n={n}",
            total == group,
            f"sum {total} vs group order {group}",
        )


def _suite_oracle(args, report: RunReport) -> None:
    q, n = args.q, args.n
    value = count_function_classes(n, q)
    report.results["function_classes"] = str(value)
    brute = burnside_full(n, q)
    report.add_check(f"oracle burnside q={q} n={n}", brute == value, f"{brute} vs {value}")
    try:
        orbits = orbit_enumeration(n, q)
    except ValueError:
        orbits = None
    if orbits is not None:
        report.add_check(f"oracle orbits q={q} n={n}", orbits == value, f"{orbits} vs {value}")


def _suite_duality(args, report: RunReport) -> None:
    n = args.n
    ok = True
    bad = ""
    for s in range(n + 1):
        for r in range(s, n + 1):
            left = theta(n, s, r, jobs=args.parallelism)
            right = theta(n, n - r, n - s, jobs=args.parallelism)
            if left != right:
                ok = False
                bad = f"theta({n};{s},{r}) = {left} but dual gives {right}"
                break
        if not ok:
            break
    report.add_check(f"duality n={n}", ok, bad or "all pairs")


def _suite_compound(args, report: RunReport) -> None:
    n_max = args.n
    ok = all(
        check_jordan_block_structure(n, r) for n in range(1, n_max + 1) for r in range(1, n + 1)
    )
    report.add_check(f"jordan-structure n<={n_max}", ok)
    ok = all(
        check_rank_bound(n, r) for n in range(1, n_max + 1) for r in range(1, n + 1)
    )
    report.add_check(f"rank-bound n<={n_max}", ok)
    import random

    from .fields import field as field_table

    rng = random.Random(2024)
    f2 = field_table(2)
    ok = True
    for _ in range(10):
        m = rng.randint(1, 4)
        k2 = rng.randint(1, 4)
        a = GFMatrix(f2, [[rng.randrange(2) for _ in range(m)] for _ in range(m)])
        b = GFMatrix(f2, [[rng.randrange(2) for _ in range(k2)] for _ in range(k2)])
        for k in range(m + 1):
            for l in range(k2 + 1):
                if not check_kronecker_embedding(a, b, k, l):
                    ok = False
    report.add_check("kronecker-embedding", ok)


def _suite_asymptotic(args, report: RunReport) -> None:
    outcome = asymptotic_report(args.n_max, jobs=args.parallelism)
    report.results["constant"] = outcome.constant
    for row in outcome.rows:
        report.results[f"classes_n{row.n}"] = str(row.class_count)
        report.results[f"ratio_n{row.n}"] = row.ratio_text
        report.results[f"ratio_excess_n{row.n}"] = row.excess_text
        report.results[f"limit_ratio_n{row.n}"] = row.limit_ratio_text
    report.add_check("ratios-exceed-one", all(row.ratio > 1 for row in outcome.rows))
    tail = [row for row in outcome.rows if row.n >= 5]
    decreasing = all(a.ratio > b.ratio for a, b in zip(tail, tail[1:]))
    report.add_check(f"ratios-decreasing n>=5 (n_max={args.n_max})", decreasing)


_SUITES = {
    "reps": (_suite_reps, {"q": 2, "n": 3}),
    "class-equation": (_suite_class_equation, {"q": 2, "n": 8}),
    "oracle": (_suite_oracle, {"q": 2, "n": 2}),
    "duality": (_suite_duality, {"n": 4}),
    "compound": (_suite_compound, {"n": 12}),
    "asymptotic": (_suite_asymptotic, {"n_max": 8}),
}


def _cmd_verify(args) -> int:
    if args.suite not in _SUITES:
        print(f"unknown suite {args.suite!r}; choose from {sorted(_SUITES)}", file=sys.stderr)
        return 2
    handler, defaults = _SUITES[args.suite]
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    report = RunReport(
        command="verify",
        parameters={
            "suite": args.suite,
            "q": str(getattr(args, "q", "") or ""),
            "n": str(getattr(args, "n", "") or ""),
            "n_max": str(getattr(args, "n_max", "") or ""),
        },
    )
    start = time.perf_counter()
    handler(args, report)
    report.elapsed_seconds = time.perf_counter() - start
    _emit(report, args)
    return 0 if report.status == "ok" else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aglcount",
        description="Exact affine-equivalence class counts and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="also write the report to this path")
        p.add_argument("--parallelism", type=int, default=1, help="worker processes (1 = in-process)")
        p.add_argument("--verbose", action="store_true", help="progress on stderr")

    p = sub.add_parser("count-functions", help="number of function classes under affine equivalence")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=20, dest="max_n")
    p.add_argument("--verbose-classes", action="store_true", dest="verbose_classes",
                   help="include the class-index count in the report")
    common(p)
    p.set_defaults(handler=_cmd_count_functions)

    p = sub.add_parser("count-cosets", help="orbit counts of Reed-Muller quotient codes (binary)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--coset-classes", action="store_true", dest="coset_classes",
                   help="count classes of the quotient by affine functions")
    p.add_argument("--max-n", type=int, default=10, dest="max_n")
    common(p)
    p.set_defaults(handler=_cmd_count_cosets)

    p = sub.add_parser("verify", help="run a cross-validation suite")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    common(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    sys.set_int_max_str_digits(_STR_DIGITS_LIMIT)
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
