"""Command line surface: classification reports, range scans, verification
suites, and oracle runs, with machine-readable JSON output.

Exit codes: 0 success, 1 verification or internal failure, 2 usage error.
JSON output is versioned ("1.0"), key-sorted, and byte-stable for a fixed
input; the table renderings carry no stability contract.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, Sequence

from .arith import factorize, hilbert_symbol, is_squarefree
from .classify import (
    ClassificationReport,
    GammaMismatchError,
    classify_report,
    contains_in_order,
    contains_in_psl2o,
    gamma,
    gamma_composed,
    host_algebra_split,
    NoHostOrderError,
)
from .orders import ramified_pairing_rank, unit_character_divisors
from .quadfield import ImagQuadField, NonSquarefreeError
from .quaternion import (
    SubgroupKind,
    from_hilbert_pair,
    group_algebra,
    sigma_k,
)
from .oracle import PrecisionError, count_maximal_orders_local, find_subgroup

SCHEMA_VERSION = "1.0"

_PROVENANCE = [
    "existence-congruences",
    "order-type-symbol-criteria",
    "local-embedding-count-tables",
    "conjugacy-class-count-formulas",
]

_KIND_BY_NAME = {
    "d3": SubgroupKind.D3,
    "t": SubgroupKind.T,
    "d2": SubgroupKind.D2MAX,
}

_KIND_ORDER = (SubgroupKind.D3, SubgroupKind.T, SubgroupKind.D2MAX)


class UsageError(Exception):
    pass


def _workers() -> int:
    env = os.environ.get("BIANCHI_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"BIANCHI_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise UsageError("BIANCHI_THREADS must be >= 1")
        return n
    return min(os.cpu_count() or 1, 8)


def _squarefree_range(dmax: int) -> list[int]:
    return [d for d in range(1, dmax + 1) if is_squarefree(d)]


def _report_payload(report: ClassificationReport) -> dict:
    kinds = []
    for entry in report.kinds:
        kinds.append(
            {
                "kind": entry.kind.value,
                "exists": entry.exists_in_psl2o,
                "host_split": entry.host_algebra_split,
                "gamma": entry.gamma,
                "failing_primes": list(entry.failing_primes),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "d": report.d,
        "kinds": kinds,
        "provenance": {"paper_theorems": _PROVENANCE},
    }


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _render_report_table(report: ClassificationReport) -> str:
    lines = [f"d = {report.d}"]
    header = f"{'kind':<6} {'in PSL2(o)':<11} {'host':<9} {'gamma':<6} failing primes"
    lines.append(header)
    lines.append("-" * len(header))
    for entry in report.kinds:
        host = (
            "-"
            if entry.host_algebra_split is None
            else ("matrix" if entry.host_algebra_split else "division")
        )
        g = "-" if entry.gamma is None else str(entry.gamma)
        fp = ",".join(map(str, entry.failing_primes)) or "-"
        mark = "yes" if entry.exists_in_psl2o else "no"
        lines.append(f"{entry.kind.value:<6} {mark:<11} {host:<9} {g:<6} {fp}")
    return "\n".join(lines)


def _scan_row(d: int) -> dict:
    return _report_payload(classify_report(d))


def _pool_map(fn, items: Sequence[int], workers: int) -> Iterable:
    if workers <= 1 or len(items) < 64:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as executor:
        chunk = max(1, len(items) // (workers * 8))
        yield from executor.map(fn, items, chunksize=chunk)


def cmd_classify(args: argparse.Namespace) -> int:
    report = classify_report(args.d)
    if args.format == "json":
        print(_dump(_report_payload(report)))
    else:
        print(_render_report_table(report))
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    if args.dmax < 1 or args.dmax > 10**6:
        raise UsageError("--dmax must lie in 1..10^6")
    kinds = _KIND_ORDER
    if args.kinds:
        names = [s.strip() for s in args.kinds.split(",") if s.strip()]
        bad = [s for s in names if s not in _KIND_BY_NAME]
        if bad:
            raise UsageError(f"unknown kinds: {','.join(bad)} (use d3,t,d2)")
        kinds = tuple(k for k in _KIND_ORDER if k.value in names)
    ds = _squarefree_range(args.dmax)
    totals = {k.value: 0 for k in kinds}
    rows = []
    json_mode = args.format == "json"
    if not json_mode:
        header = "d      " + "".join(f"{k.value:<5}" for k in kinds) + "gamma"
        print(header)
    for payload in _pool_map(_scan_row, ds, _workers()):
        by_kind = {e["kind"]: e for e in payload["kinds"]}
        for k in kinds:
            if by_kind[k.value]["exists"]:
                totals[k.value] += 1
        if json_mode:
            rows.append(payload)
        else:
            marks = "".join(
                f"{'x' if by_kind[k.value]['exists'] else '.':<5}" for k in kinds
            )
            gammas = ",".join(
                str(by_kind[k.value]["gamma"])
                if by_kind[k.value]["gamma"] is not None
                else "-"
                for k in kinds
            )
            print(f"{payload['d']:<7}{marks}{gammas}")
    if json_mode:
        print(
            _dump(
                {
                    "schema_version": SCHEMA_VERSION,
                    "dmax": args.dmax,
                    "rows": rows,
                    "totals": totals,
                }
            )
        )
    else:
        summary = ", ".join(f"{k.value}: {totals[k.value]}" for k in kinds)
        print(f"-- {len(ds)} squarefree d <= {args.dmax}; present for {summary}")
    return 0


def cmd_gamma(args: argparse.Namespace) -> int:
    kind = _KIND_BY_NAME[args.kind]
    try:
        value = gamma(kind, args.d)
        composed = gamma_composed(kind, args.d)
        split = host_algebra_split(kind, args.d)
    except NoHostOrderError as exc:
        raise UsageError(str(exc))
    if value != composed:
        raise GammaMismatchError(
            f"paths disagree for {kind.value}, d={args.d}: {value} vs {composed}"
        )
    host = "matrix" if split else "division"
    print(
        _dump(
            {
                "schema_version": SCHEMA_VERSION,
                "d": args.d,
                "kind": kind.value,
                "gamma": value,
                "host_split": split,
                "host": host,
            }
        )
    )
    return 0


# --- verification suites -------------------------------------------------


def _suite_reciprocity(args: argparse.Namespace) -> list[str]:
    from .arith import relevant_places

    rng = random.Random(20240917)
    failures = []
    for _ in range(1000):
        a = rng.randint(1, 10**6) * rng.choice((1, -1))
        b = rng.randint(1, 10**6) * rng.choice((1, -1))
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert_symbol(a, b, v)
        if prod != 1:
            failures.append(f"reciprocity fails for ({a}, {b})")
    return failures


def _existence_failures_at(d: int) -> list[str]:
    return [
        f"symbol/congruence mismatch: {kind.value}, d={d}"
        for kind in _KIND_ORDER
        if contains_in_order(kind, 1, d) != contains_in_psl2o(kind, d)
    ]


def _suite_existence(args: argparse.Namespace) -> list[str]:
    dmax = args.dmax or 1000
    ds = _squarefree_range(dmax)
    return [f for rows in _pool_map(_existence_failures_at, ds, _workers()) for f in rows]


def _gamma_failures_at(d: int) -> list[str]:
    failures = []
    for kind in _KIND_ORDER:
        try:
            a = gamma(kind, d)
            b = gamma_composed(kind, d)
        except NoHostOrderError:
            continue
        if a != b:
            failures.append(f"gamma paths differ: {kind.value}, d={d}: {a} vs {b}")
        elif a & (a - 1):
            failures.append(f"gamma not a power of 2: {kind.value}, d={d}: {a}")
    return failures


def _suite_gamma(args: argparse.Namespace) -> list[str]:
    dmax = args.dmax or 500
    ds = _squarefree_range(dmax)
    return [f for rows in _pool_map(_gamma_failures_at, ds, _workers()) for f in rows]


def _suite_autindex(args: argparse.Namespace) -> list[str]:
    dmax = args.dmax or 200
    failures = []
    algebras = [
        group_algebra(SubgroupKind.D3).algebra,
        group_algebra(SubgroupKind.T).algebra,
        from_hilbert_pair(-1, 3),
        from_hilbert_pair(2, 5),
        from_hilbert_pair(-1, 7),
    ]
    for d in _squarefree_range(dmax):
        k = ImagQuadField(d)
        for F in algebras:
            sk = sigma_k(F, k)
            r = len(factorize(sk).primes()) if sk > 1 else 0
            n_trivial = len(unit_character_divisors(F, k))
            s_enum = n_trivial.bit_length() - 1
            if 1 << s_enum != n_trivial:
                failures.append(f"divisor count not a power of 2: d={d}, {F}")
                continue
            if s_enum != r - ramified_pairing_rank(F, k):
                failures.append(f"s-count/rank mismatch: d={d}, {F}")
    return failures


def _suite_subgroups(args: argparse.Namespace) -> list[str]:
    dmax = args.dmax or 30
    height = args.height or 10
    failures = []
    for d in _squarefree_range(dmax):
        for kind in _KIND_ORDER:
            predicted = contains_in_psl2o(kind, d)
            witness = find_subgroup(kind, d, height)
            if predicted and witness is None:
                failures.append(
                    f"search exhausted but existence predicted: {kind.value}, d={d}"
                )
            if not predicted and witness is not None:
                failures.append(
                    f"witness found but nonexistence predicted: {kind.value}, d={d}"
                )
    return failures


def _suite_local(args: argparse.Namespace) -> list[str]:
    from .orders import LocalCountQuery, local_embedding_count
    from .quadfield import SplitType

    failures = []
    for p, d in ((3, 3), (5, 5)):
        k = ImagQuadField(d)
        for split_alg, tau in ((True, 1), (False, _nonresidue(p))):
            for r in range(4):
                expected = (
                    1
                    if r == 0
                    else local_embedding_count(
                        LocalCountQuery(p, SplitType.RAMIFIED, split_alg, r)
                    )
                )
                try:
                    got = count_maximal_orders_local(p, k, tau, r)
                except PrecisionError as exc:
                    failures.append(f"precision failure p={p}, tau={tau}, r={r}: {exc}")
                    continue
                if got != expected:
                    failures.append(
                        f"tree count p={p}, tau={tau}, r={r}: got {got}, "
                        f"table says {expected}"
                    )
    return failures


def _nonresidue(p: int) -> int:
    from .arith import kronecker

    return next(n for n in range(2, p) if kronecker(n, p) == -1)


_SUITES = {
    "reciprocity": _suite_reciprocity,
    "existence": _suite_existence,
    "gamma": _suite_gamma,
    "autindex": _suite_autindex,
    "subgroups": _suite_subgroups,
    "local": _suite_local,
}


def cmd_verify(args: argparse.Namespace) -> int:
    failures = _SUITES[args.suite](args)
    if failures:
        for line in failures:
            print(f"FAIL: {line}", file=sys.stderr)
        print(f"suite {args.suite}: {len(failures)} failure(s)")
        return 1
    print(f"suite {args.suite}: pass")
    return 0


def cmd_oracle_subgroups(args: argparse.Namespace) -> int:
    height = args.height if args.height is not None else 10
    results = {}
    for kind in _KIND_ORDER:
        witness = find_subgroup(kind, args.d, height)
        if witness is None:
            results[kind.value] = None
        else:
            results[kind.value] = [
                {"a": list(m.a), "b": list(m.b), "c": list(m.c), "d": list(m.d)}
                for m in witness.generators
            ]
    print(
        _dump(
            {
                "schema_version": SCHEMA_VERSION,
                "d": args.d,
                "height": height,
                "witnesses": results,
            }
        )
    )
    return 0


def cmd_oracle_local(args: argparse.Namespace) -> int:
    k = ImagQuadField(args.d)
    count = count_maximal_orders_local(args.p, k, args.tau, args.exp)
    print(
        _dump(
            {
                "schema_version": SCHEMA_VERSION,
                "p": args.p,
                "d": args.d,
                "tau": args.tau,
                "exp": args.exp,
                "count": count,
            }
        )
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bianchi",
        description="finite subgroups of Bianchi groups: classification, "
        "class counts, and brute-force verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one d")
    p_classify.add_argument("--d", type=int, required=True)
    p_classify.add_argument("--format", choices=("table", "json"), default="table")
    p_classify.set_defaults(func=cmd_classify)

    p_scan = sub.add_parser("scan", help="classify all squarefree d up to a bound")
    p_scan.add_argument("--dmax", type=int, required=True)
    p_scan.add_argument("--kinds", type=str, default="")
    p_scan.add_argument("--format", choices=("table", "json"), default="table")
    p_scan.set_defaults(func=cmd_scan)

    p_gamma = sub.add_parser("gamma", help="conjugacy class count for one kind")
    p_gamma.add_argument("--d", type=int, required=True)
    p_gamma.add_argument("--kind", choices=sorted(_KIND_BY_NAME), required=True)
    p_gamma.set_defaults(func=cmd_gamma)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p_verify.add_argument("--dmax", type=int, default=None)
    p_verify.add_argument("--height", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="run a brute-force oracle")
    oracle_sub = p_oracle.add_subparsers(dest="oracle_command", required=True)

    p_subgroups = oracle_sub.add_parser("subgroups", help="search SL2(o) directly")
    p_subgroups.add_argument("--d", type=int, required=True)
    p_subgroups.add_argument("--height", type=int, default=None)
    p_subgroups.set_defaults(func=cmd_oracle_subgroups)

    p_local = oracle_sub.add_parser(
        "local-count", help="count local maximal orders on the tree"
    )
    p_local.add_argument("--p", type=int, required=True)
    p_local.add_argument("--d", type=int, required=True)
    p_local.add_argument("--tau", type=int, required=True)
    p_local.add_argument("--exp", type=int, required=True)
    p_local.set_defaults(func=cmd_oracle_local)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NonSquarefreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GammaMismatchError, PrecisionError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
