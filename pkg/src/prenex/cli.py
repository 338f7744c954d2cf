"""Command-line surface.

Exit codes are a stable scripting contract: 0 accept/true, 1 reject/false,
2 usage, parse or I/O error, 3 size cap exceeded.  Data goes to stdout,
diagnostics to stderr, never interleaved.
"""

from __future__ import annotations

import argparse
import gc
import hashlib
import json
import random
import statistics
import sys
import time
from array import array
from dataclasses import asdict

from .census import CLASS_CAP, PAIR_CAP, build_graph, count_pairs, export_graph
from .decide import Verdict, decide_with_stats, implies
from .errors import InstanceTooLargeError, PrefixError
from .oracle import ORACLE_CAP, closure, oracle_implies
from .prefix import (
    canonicalize,
    default_names,
    equivalent,
    parse_prefix,
    parse_prefix_pair,
    random_prefix,
)

__all__ = ["main", "build_parser", "run_bench"]


def _verdict_doc(verdict: Verdict) -> dict:
    return {
        "verdict": "accept" if verdict.accepted else "reject",
        "witness": None if verdict.witness is None else asdict(verdict.witness),
    }


def _cmd_check(args: argparse.Namespace) -> int:
    s1, s2 = parse_prefix_pair(args.lhs, args.rhs)
    verdict = implies(s1, s2)
    if args.json:
        print(json.dumps(_verdict_doc(verdict)))
    elif verdict.accepted:
        print("accept")
    else:
        w = verdict.witness
        name = s2.names[w.variable]
        detail = f"case {w.case_id} at position {w.s2_position}: variable {name}"
        if w.blocking_f is not None:
            detail += f", blocked by existential at {w.blocking_f} in lhs"
        print(f"reject ({detail})")
    return 0 if verdict.accepted else 1


def _cmd_batch(args: argparse.Namespace) -> int:
    stream = sys.stdin if args.path == "-" else open(args.path, encoding="utf-8")
    all_ok = True
    try:
        for line in stream:
            try:
                record = json.loads(line)
                lhs, rhs = record["lhs"], record["rhs"]
                if not isinstance(lhs, str) or not isinstance(rhs, str):
                    raise TypeError("lhs and rhs must be strings")
                s1, s2 = parse_prefix_pair(lhs, rhs)
                verdict = implies(s1, s2)
                print(json.dumps(_verdict_doc(verdict)))
                all_ok = all_ok and verdict.accepted
            except (json.JSONDecodeError, KeyError, TypeError, PrefixError) as exc:
                print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}))
                all_ok = False
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0 if all_ok else 1


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    s1, s2 = parse_prefix_pair(args.lhs, args.rhs)
    answer = oracle_implies(s1, s2, max_n=args.max_n)
    if args.json:
        print(json.dumps({"implies": answer}))
    else:
        print("true" if answer else "false")
    return 0 if answer else 1


def _cmd_canon(args: argparse.Namespace) -> int:
    text = canonicalize(parse_prefix(args.prefix)).text
    if args.json:
        print(json.dumps({"canonical": text}))
    else:
        print(text)
    return 0


def _cmd_equiv(args: argparse.Namespace) -> int:
    s1, s2 = parse_prefix_pair(args.lhs, args.rhs)
    answer = equivalent(s1, s2)
    if args.json:
        print(json.dumps({"equivalent": answer}))
    else:
        print("equivalent" if answer else "not equivalent")
    return 0 if answer else 1


def _cmd_closure(args: argparse.Namespace) -> int:
    classes = closure(parse_prefix(args.prefix), max_n=args.max_n)
    if args.json:
        print(json.dumps({"count": len(classes), "classes": [c.text for c in classes]}))
    else:
        for cls in classes:
            print(cls.text)
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    data = export_graph(build_graph(args.n, cap=args.max_n), args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def _cmd_census(args: argparse.Namespace) -> int:
    report = count_pairs(args.n, cap=args.max_n)
    if args.json:
        doc = {
            "n": report.n,
            "class_count": report.class_count,
            "edge_count": report.edge_count,
            "true_pairs": report.true_pairs,
            "total_pairs": report.total_pairs,
            "probability": str(report.probability),
        }
        print(json.dumps(doc))
    else:
        print(f"class_count {report.class_count}")
        print(f"edge_count {report.edge_count}")
        print(f"true_pairs {report.true_pairs}")
        print(f"total_pairs {report.total_pairs}")
        print(f"probability {report.probability}")
    return 0


def run_bench(sizes: list[int], seed: int, reps: int) -> list[dict]:
    """Time the decider on seeded random pairs; one row per size.

    Each size draws its pair from its own RNG derived from (seed, n), so a
    row's inputs do not depend on which other sizes were requested.  Timing
    lives in a separate sub-object so consumers can strip it and compare
    the reproducible fields bytewise.
    """
    rows = []
    for n in sizes:
        rng = random.Random(seed * 1_000_003 + n)
        names = default_names(n)
        s1 = random_prefix(n, rng, names)
        s2 = random_prefix(n, rng, names)
        digest = hashlib.sha256()
        for p in (s1, s2):
            digest.update(array("q", p.sigma).tobytes())
            digest.update(bytes(p.b))
        verdict, stats = decide_with_stats(s1, s2)
        times = []
        gc_was_enabled = gc.isenabled()
        gc.disable()
        try:
            for _ in range(reps):
                start = time.perf_counter()
                implies(s1, s2)
                times.append(time.perf_counter() - start)
        finally:
            if gc_was_enabled:
                gc.enable()
        rows.append(
            {
                "n": n,
                "checksum": digest.hexdigest()[:16],
                "accepted": verdict.accepted,
                "loop_steps": stats.loop_steps,
                "rescan_steps": stats.rescan_steps,
                "ops_per_element": round(
                    (stats.loop_steps + stats.rescan_steps) / n, 6
                ),
                "timing": {"median_s": statistics.median(times), "times_s": times},
            }
        )
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = args.sizes
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 1:
        print("error: --sizes must be strictly increasing and >= 1", file=sys.stderr)
        return 2
    rows = run_bench(sizes, args.seed, args.reps)
    if args.json:
        print(json.dumps({"seed": args.seed, "reps": args.reps, "rows": rows}))
    else:
        print(f"{'n':>9}  {'median_s':>10}  {'ops/elt':>8}  {'rescan':>9}  checksum")
        for row in rows:
            print(
                f"{row['n']:>9}  {row['timing']['median_s']:>10.6f}  "
                f"{row['ops_per_element']:>8.3f}  {row['rescan_steps']:>9}  "
                f"{row['checksum']}"
            )
    return 0


def _sizes_arg(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad sizes list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prenex",
        description="Decide implication between quantifier prefixes over a "
        "shared arbitrary matrix.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--lhs", required=True, help="left prefix text")
        p.add_argument("--rhs", required=True, help="right prefix text")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="decide lhs => rhs with the linear decider")
    pair_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("batch", help="decide JSONL records {lhs, rhs} from a file")
    p.add_argument("path", help="input path, or - for stdin")
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("oracle-check", help="decide lhs => rhs by brute-force BFS")
    pair_flags(p)
    p.add_argument("--max-n", type=int, default=ORACLE_CAP, help="oracle size cap")
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("canon", help="print the canonical class representative")
    p.add_argument("prefix", help="prefix text")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("equiv", help="test equivalence of two prefixes")
    pair_flags(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("closure", help="list every class implied by a prefix")
    p.add_argument("prefix", help="prefix text")
    p.add_argument("--max-n", type=int, default=ORACLE_CAP, help="oracle size cap")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("graph", help="export the class implication graph")
    p.add_argument("--n", type=int, required=True, help="variable count")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--max-n", type=int, default=CLASS_CAP, help="enumeration cap")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("census", help="classes, edges and exact implication count")
    p.add_argument("--n", type=int, required=True, help="variable count")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-n", type=int, default=PAIR_CAP, help="pair-count cap")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("bench", help="time the decider on seeded random pairs")
    p.add_argument(
        "--sizes",
        type=_sizes_arg,
        default=[100_000, 200_000, 400_000, 800_000, 1_600_000],
        help="comma-separated strictly increasing prefix lengths",
    )
    p.add_argument("--seed", type=int, default=1, help="generation seed")
    p.add_argument("--reps", type=int, default=3, help="timed repetitions per size")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PrefixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
