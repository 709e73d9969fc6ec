"""Command-line front end.

Subcommands: adaptive (play searcher vs oracle), construct (build a
separating system and write it out), verify (check a query-set file),
bounds (closed-form brackets), oracle claim-count / brute-min (exhaustive
cross-checks), replay (re-run a saved transcript byte for byte).

Reports go to stdout as JSON with sorted keys and two-space indent, so the
same invocation always produces the same bytes.  Exit codes: 0 all checks
passed, 1 a check failed, 2 bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from pathlib import Path

from .bounds import BOUNDS_CSV_COLUMNS, bounds_report
from .game import (
    FixedOracle,
    Transcript,
    oracle_from_name,
    replay,
    run_game,
    searcher_from_name,
)
from .gf import NotAPrimePower, is_prime_power
from .projspace import geometry
from .separating import (
    Exhausted,
    QuerySet,
    brute_force_minimum,
    count_unseparated_bruteforce,
    explicit_construction,
    random_construction_trace,
    separating_witness,
    unseparated_pencil_count,
)


def _emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True, indent=2))


def _save_transcript(path: str | None, t: Transcript) -> None:
    if path:
        Path(path).write_text(t.to_json() + "\n")


def _cmd_adaptive(args) -> int:
    n, q = args.n, args.q
    bound = (q - 1) * (n - 1) + 1
    report = {
        "command": "adaptive",
        "n": n,
        "q": q,
        "strategy": args.strategy,
        "oracle": args.oracle,
        "bound": bound,
    }
    if args.oracle == "fixed:all":
        if args.save:
            raise ValueError("--save records a single game, not a sweep")
        geom = geometry(n, q)
        counts = []
        failures = 0
        for point in geom.points:
            s = searcher_from_name(args.strategy, n, q)
            t = run_game(s, FixedOracle(q, point), n, q)
            counts.append(t.count)
            if t.identified != point or t.count > bound:
                failures += 1
        ok = failures == 0
        report.update(
            games=len(counts),
            max_count=max(counts),
            mean_count=sum(counts) / len(counts),
            failures=failures,
            ok=ok,
        )
    elif args.oracle == "adversary":
        s = searcher_from_name(args.strategy, n, q)
        o = oracle_from_name("adversary", n, q)
        t = run_game(s, o, n, q)
        threshold = 2 * q - 1
        ok = t.identified is not None and t.count >= threshold
        report.update(count=t.count, threshold=threshold, outcome=t.outcome, ok=ok)
        _save_transcript(args.save, t)
    else:
        s = searcher_from_name(args.strategy, n, q)
        o = oracle_from_name(args.oracle, n, q)
        t = run_game(s, o, n, q)
        ok = t.identified == o.point and t.count <= bound
        report.update(count=t.count, outcome=t.outcome, ok=ok)
        _save_transcript(args.save, t)
    _emit(report)
    return 0 if ok else 1


def _cmd_construct(args) -> int:
    n, q = args.n, args.q
    if args.method == "explicit":
        qs = explicit_construction(n, q)
        seed = None
        attempts = None
        bound = n + (n * (n - 1) // 2) * (q - 2)
    else:
        if args.seed is None:
            raise ValueError("--method random needs --seed")
        qs, attempts = random_construction_trace(n, q, args.seed)
        seed = args.seed
        bound = 2 * n * q
    separating = separating_witness(qs) is None
    if args.out:
        qs.save(args.out)
    ok = separating and len(qs) <= bound
    _emit(
        {
            "command": "construct",
            "n": n,
            "q": q,
            "method": args.method,
            "seed": seed,
            "attempts": attempts,
            "size": len(qs),
            "bound": bound,
            "separating": separating,
            "out": args.out,
            "ok": ok,
        }
    )
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    qs = QuerySet.load(args.file)
    wit = separating_witness(qs)
    _emit(
        {
            "command": "verify",
            "file": args.file,
            "n": qs.n,
            "q": qs.q,
            "size": len(qs),
            "separating": wit is None,
            "witness": None if wit is None else [list(wit[0]), list(wit[1])],
        }
    )
    return 0 if wit is None else 1


def _cmd_bounds(args) -> int:
    rep = bounds_report(args.n, args.q)
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(BOUNDS_CSV_COLUMNS)
        for row in rep.rows():
            n, q, name, tag, value, exact = row
            w.writerow([n, q, name, tag, value, "" if exact is None else str(exact)])
    else:
        _emit({"command": "bounds", **rep.to_dict()})
    return 0


def _cmd_claim_count(args) -> int:
    n, q = args.n, args.q
    if n < 3:
        raise ValueError(f"pencils through (n-2)-subspaces need n >= 3, got n={n}")
    formula = unseparated_pencil_count(n, q)
    geom = geometry(n, q)
    pairs = 0
    first_mismatch = None
    for u, v in itertools.combinations(geom.points, 2):
        got = count_unseparated_bruteforce(n, q, u, v)
        pairs += 1
        if got != formula and first_mismatch is None:
            first_mismatch = {"u": list(u), "v": list(v), "count": got}
    ok = first_mismatch is None
    _emit(
        {
            "command": "oracle-claim-count",
            "n": n,
            "q": q,
            "formula": formula,
            "pairs": pairs,
            "first_mismatch": first_mismatch,
            "ok": ok,
        }
    )
    return 0 if ok else 1


def _cmd_brute_min(args) -> int:
    n, q = args.n, args.q
    restrict = not args.all_dims
    try:
        qs = brute_force_minimum(n, q, max_size=args.max, restrict_to_hyperplanes=restrict)
        minimum = len(qs)
        witness = [s.literal() for s in qs.queries]
    except Exhausted:
        minimum = None
        witness = None
    _emit(
        {
            "command": "oracle-brute-min",
            "n": n,
            "q": q,
            "max_size": args.max,
            "restrict_to_hyperplanes": restrict,
            "minimum": minimum,
            "witness": witness,
            "ok": minimum is not None,
        }
    )
    return 0 if minimum is not None else 1


def _cmd_replay(args) -> int:
    t = Transcript.from_json(Path(args.file).read_text())
    if not is_prime_power(t.q):
        raise ValueError(f"transcript has non-prime-power q={t.q}")
    match, fresh = replay(t)
    _emit(
        {
            "command": "replay",
            "file": args.file,
            "match": match,
            "count": fresh.count,
            "outcome": fresh.outcome,
        }
    )
    return 0 if match else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsearch",
        description="search for an unknown line through the origin in GF(q)^n",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("adaptive", help="play one searcher against one oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument(
        "--strategy",
        required=True,
        help="plane, inductive, two-round, or random-lines:<seed>",
    )
    p.add_argument(
        "--oracle",
        required=True,
        help="fixed:<c1,...,cn>, fixed:all (sweep every point), or adversary",
    )
    p.add_argument("--save", help="write the transcript JSON here (single game only)")
    p.set_defaults(handler=_cmd_adaptive)

    p = sub.add_parser("construct", help="build a separating system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("explicit", "random"), required=True)
    p.add_argument("--seed", type=int, help="required for --method random")
    p.add_argument("--out", help="write the system to this file")
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("verify", help="check a query-set file for separation")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("bounds", help="closed-form brackets for one (n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="one row per bound")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("oracle", help="exhaustive cross-checks")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)

    pc = osub.add_parser(
        "claim-count",
        help="per-pair unseparated-pencil count: formula vs brute force",
    )
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--q", type=int, required=True)
    pc.set_defaults(handler=_cmd_claim_count)

    pb = osub.add_parser("brute-min", help="exact minimum separating-system size")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--q", type=int, required=True)
    pb.add_argument("--max", type=int, default=8, help="largest size to try")
    pb.add_argument(
        "--all-dims",
        action="store_true",
        help="allow every proper subspace as a query, not just hyperplanes",
    )
    pb.set_defaults(handler=_cmd_brute_min)

    p = sub.add_parser("replay", help="re-run a saved transcript and compare")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_replay)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    q = getattr(args, "q", None)
    if q is not None and not is_prime_power(q):
        parser.error(f"q={q} is not a prime power")
    n = getattr(args, "n", None)
    if n is not None and n < 2:
        parser.error(f"need n >= 2, got n={n}")
    try:
        return args.handler(args)
    except (NotAPrimePower, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
