"""Command-line front end.

Subcommands:

* ``classify``   forbidden / not forbidden for one divisor or a whole window
* ``oracle``     cohomology-oracle verdict with chamber witnesses
* ``crosscheck`` classifier vs oracle over a window (exit 1 on disagreement)
* ``fan``        build the fan, report counts and the structure certificate
* ``graph``      build a compatibility graph, export json/dot/text
* ``clique``     exact maximum clique of a window graph
* ``verify``     one lemma verifier or ``all``
* ``bound``      exact length-bound table over k

Exit status is 0 iff everything requested passed: no counterexample, no
classifier/oracle disagreement, no invalid input.  Output format is chosen
with --format (text default, json schema-stable; graphs also support dot).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from . import _kernels
from .cohomology import has_higher_cohomology, higher_cohomology_report
from .divisors import DivisorClass, check_dimension
from .fan import build_fan, is_complete, is_smooth, verify_batyrev_data
from .forbidden import is_forbidden
from .graphs import Window, build_graph, max_clique
from .lemmas import LEMMA_IDS, ZERO, bound_table, observation_forces_high, run_verifier


def _parse_divisor(text: str) -> DivisorClass:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"divisor must be a,b,c, got {text!r}")
    try:
        return DivisorClass(*(int(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_window(text: str) -> Window:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"window must be aMin..aMax,bMin..bMax,cMin..cMax, got {text!r}"
        )
    ranges = []
    for part in parts:
        lo, sep, hi = part.partition("..")
        if not sep:
            raise argparse.ArgumentTypeError(f"range must use lo..hi, got {part!r}")
        try:
            ranges.append((int(lo), int(hi)))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    try:
        return Window(*ranges)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excoll",
        description=(
            "Exact verification toolkit for strongly exceptional collections "
            "of line bundles on projective space blown up at two points."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, window_default: Optional[str] = None):
        p.add_argument("--n", type=int, required=True, help="ambient dimension (>= 2)")
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
        p.add_argument("--radius", type=int, default=None,
                       help="override the character/presentation box radius")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker cap for window sweeps")
        p.add_argument("--seedless", action="store_true",
                       help="reserved flag; rejected (nothing here is random)")
        if window_default is not None:
            p.add_argument("--window", type=_parse_window, default=None,
                           help=f"coordinate box (default {window_default})")

    p = sub.add_parser("classify", help="sign-pattern forbiddenness")
    common(p, window_default="single divisor")
    p.add_argument("--divisor", type=_parse_divisor, default=None)

    p = sub.add_parser("oracle", help="cohomology-oracle forbiddenness")
    common(p)
    p.add_argument("--divisor", type=_parse_divisor, required=True)

    p = sub.add_parser("crosscheck", help="classifier vs oracle over a window")
    common(p, window_default="-3..3 cubed")

    p = sub.add_parser("fan", help="fan construction report")
    common(p)

    p = sub.add_parser("graph", help="compatibility graph export")
    common(p, window_default="required")

    p = sub.add_parser("clique", help="exact maximum clique over a window")
    common(p, window_default="required")
    p.add_argument("--require-zero", action="store_true",
                   help="only count cliques containing the zero class")

    p = sub.add_parser("verify", help="lemma verifier(s)")
    common(p)
    p.add_argument("lemma", choices=LEMMA_IDS + ("all",))
    p.add_argument("--a-max", type=int, default=None,
                   help="first-coordinate cap (default 3n)")

    p = sub.add_parser("bound", help="length bound table over k")
    common(p)

    return parser


def _emit(payload: dict, fmt: str, text_lines: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _classify_chunk(args: Tuple[int, List[Tuple[int, int, int]]]) -> List[bool]:
    n, coords = args
    return [is_forbidden(n, DivisorClass(*t)) for t in coords]


def _crosscheck_chunk(
    args: Tuple[int, List[Tuple[int, int, int]], Optional[int]]
) -> List[Tuple[Tuple[int, int, int], bool, bool]]:
    n, coords, radius = args
    fan = build_fan(n)
    out = []
    for t in coords:
        d = DivisorClass(*t)
        lhs = is_forbidden(n, d)
        rhs = has_higher_cohomology(fan, d, radius)
        if lhs != rhs:
            out.append((t, lhs, rhs))
    return out


def _chunked(items: list, jobs: int) -> List[list]:
    jobs = max(1, min(jobs, len(items) or 1))
    size = (len(items) + jobs - 1) // jobs
    return [items[i : i + size] for i in range(0, len(items), size)]


def _map_jobs(func, payloads: list, jobs: int) -> list:
    if jobs <= 1 or len(payloads) <= 1:
        return [func(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, payloads))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if getattr(args, "seedless", False):
        parser.error("--seedless is reserved: the toolkit is deterministic already")
    try:
        check_dimension(args.n)
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))
    if args.jobs < 1:
        parser.error(f"--jobs must be >= 1, got {args.jobs}")

    command = args.command
    if command == "classify":
        return _cmd_classify(args)
    if command == "oracle":
        return _cmd_oracle(args)
    if command == "crosscheck":
        return _cmd_crosscheck(args)
    if command == "fan":
        return _cmd_fan(args)
    if command == "graph":
        return _cmd_graph(args)
    if command == "clique":
        return _cmd_clique(args)
    if command == "verify":
        return _cmd_verify(args)
    if command == "bound":
        return _cmd_bound(args)
    raise AssertionError(command)


def _cmd_classify(args) -> int:
    n = args.n
    if (args.divisor is None) == (args.window is None):
        print("classify needs exactly one of --divisor or --window", file=sys.stderr)
        return 2
    if args.divisor is not None:
        verdict = is_forbidden(n, args.divisor)
        payload = {
            "n": n,
            "divisor": args.divisor.to_json(),
            "forbidden": verdict,
            "backend": _kernels.BACKEND,
        }
        _emit(payload, args.format,
              [f"{args.divisor} is {'forbidden' if verdict else 'not forbidden'} (n={n})"])
        return 0
    points = [v.as_tuple() for v in args.window.points()]
    results: List[bool] = []
    for chunk_out in _map_jobs(
        _classify_chunk, [(n, chunk) for chunk in _chunked(points, args.jobs)], args.jobs
    ):
        results.extend(chunk_out)
    payload = {
        "n": n,
        "window": args.window.to_json(),
        "forbidden": [list(t) for t, f in zip(points, results) if f],
        "total": len(points),
    }
    lines = [f"window {args.window}: {sum(results)} of {len(points)} classes forbidden"]
    if args.format == "text":
        lines += [f"  {DivisorClass(*t)}" for t, f in zip(points, results) if f]
    _emit(payload, args.format, lines)
    return 0


def _cmd_oracle(args) -> int:
    fan = build_fan(args.n)
    report = higher_cohomology_report(fan, args.divisor, args.radius)
    verdict = report["has_higher_cohomology"]
    lines = [
        f"{args.divisor}: higher cohomology {'PRESENT' if verdict else 'absent'} "
        f"(n={args.n}, {report['chambers_checked']} chambers, radius {report['radius']})"
    ]
    for w in report["witnesses"][:8]:
        lines.append(
            f"  H^{w['nonzero_degree']} != 0 at m={w['m']} (rays {w['negative_set']})"
        )
    _emit(report, args.format, lines)
    return 0


def _cmd_crosscheck(args) -> int:
    n = args.n
    window = args.window or Window((-3, 3), (-3, 3), (-3, 3))
    points = [v.as_tuple() for v in window.points()]
    disagreements: List[Tuple] = []
    for chunk_out in _map_jobs(
        _crosscheck_chunk,
        [(n, chunk, args.radius) for chunk in _chunked(points, args.jobs)],
        args.jobs,
    ):
        disagreements.extend(chunk_out)
    payload = {
        "n": n,
        "window": window.to_json(),
        "total": len(points),
        "disagreements": [
            {"divisor": list(t), "classifier": lhs, "oracle": rhs}
            for t, lhs, rhs in disagreements
        ],
    }
    lines = [
        f"crosscheck n={n} over {len(points)} classes: "
        f"{len(disagreements)} disagreement(s)"
    ]
    for t, lhs, rhs in disagreements[:10]:
        lines.append(f"  {DivisorClass(*t)}: classifier={lhs} oracle={rhs}")
    _emit(payload, args.format, lines)
    return 0 if not disagreements else 1


def _cmd_fan(args) -> int:
    fan = build_fan(args.n)
    report = verify_batyrev_data(fan)
    smooth = is_smooth(fan)
    complete = is_complete(fan)
    payload = {
        "fan": fan.to_json(),
        "rays": fan.n_rays,
        "max_cones": len(fan.max_cones),
        "picard_rank": fan.picard_rank,
        "smooth": smooth,
        "complete": complete,
        "structure": report.to_json(),
    }
    ok = smooth and complete and report.passed
    lines = [
        f"rays={fan.n_rays} max_cones={len(fan.max_cones)} picard_rank={fan.picard_rank}",
        f"smooth={smooth} complete={complete} structure={'ok' if report.passed else 'FAIL'}",
    ]
    lines += [f"  problem: {p}" for p in report.counterexamples]
    _emit(payload, args.format, lines)
    return 0 if ok else 1


def _require_window(args) -> Optional[Window]:
    if args.window is None:
        print(f"{args.command} requires --window", file=sys.stderr)
        return None
    return args.window


def _cmd_graph(args) -> int:
    window = _require_window(args)
    if window is None:
        return 2
    graph = build_graph(args.n, window)
    if args.format == "dot":
        print(graph.to_dot())
        return 0
    payload = graph.to_json()
    lines = [
        f"graph over {window}: {graph.n_vertices} vertices, {graph.n_edges} edges"
    ]
    _emit(payload, args.format, lines)
    return 0


def _cmd_clique(args) -> int:
    window = _require_window(args)
    if window is None:
        return 2
    graph = build_graph(args.n, window)
    require = ZERO if args.require_zero else None
    if require is not None and require not in graph.vertices:
        print("--require-zero needs the zero class inside the window", file=sys.stderr)
        return 2
    size, witness = max_clique(graph, require=require)
    payload = {
        "n": args.n,
        "window": window.to_json(),
        "clique_number": size,
        "witness": [v.to_json() for v in witness],
        "require_zero": bool(args.require_zero),
    }
    lines = [
        f"maximum clique over {window}: {size}",
        "  " + " ".join(str(v) for v in witness),
    ]
    _emit(payload, args.format, lines)
    return 0


def _cmd_verify(args) -> int:
    requested = LEMMA_IDS if args.lemma == "all" else (args.lemma,)
    reports = []
    skips = []
    failed = False
    for lemma_id in requested:
        report, skip = run_verifier(lemma_id, args.n, args.a_max)
        if report is None:
            skips.append((lemma_id, skip))
        else:
            reports.append(report)
            failed |= not report.passed
    payload = {
        "n": args.n,
        "reports": [r.to_json() for r in reports],
        "skipped": [{"lemma_id": lid, "reason": reason} for lid, reason in skips],
        "passed": not failed,
    }
    lines = [r.summary() for r in reports]
    lines += [f"{lid:>8}  n={args.n:<3} skipped: {reason}" for lid, reason in skips]
    for r in reports:
        for ce in r.counterexamples[:5]:
            lines.append(f"          counterexample: {ce}")
    _emit(payload, args.format, lines)
    return 0 if not failed else 1


def _cmd_bound(args) -> int:
    n = args.n
    rows = bound_table(n)
    payload = {
        "n": n,
        "rank": 3 * n - 1,
        "rows": rows,
        "low_cap_forces_high": observation_forces_high(n),
    }
    lines = [f"rank K0 = 3n-1 = {3 * n - 1}; low-member cap forces a high member: "
             f"{observation_forces_high(n)}"]
    for row in rows:
        mark = "<" if row["beats_rank"] else ">="
        lines.append(
            f"  k={row['k']:<3} bound={row['bound']:>8} {mark} {row['rank']}"
        )
    _emit(payload, args.format, lines)
    return 0


if __name__ == "__main__":
    sys.exit(main())
