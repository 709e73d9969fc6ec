#!/usr/bin/env python3
"""Pit the n=3 adversarial oracle against a roster of searchers and report
how many queries each one is forced to spend.

Every consistent searcher should be forced to at least 2q-1 queries; the
exit code is nonzero if any run comes in under that or fails to finish."""

import argparse
import statistics
import sys
from dataclasses import dataclass, field

from qsearch.game import AdversaryOracle, run_game, searcher_from_name


@dataclass
class Roster:
    qs: list = field(default_factory=lambda: [2, 3, 4, 5, 7])
    random_seeds: int = 25

    def names(self):
        return ["plane", "inductive", "two-round"] + [
            f"random-lines:{s}" for s in range(self.random_seeds)
        ]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", help="field orders to play")
    ap.add_argument("--seeds", type=int, default=25, help="random-line searchers")
    args = ap.parse_args()
    roster = Roster()
    if args.q:
        roster.qs = args.q
    roster.random_seeds = args.seeds

    bad = 0
    for q in roster.qs:
        floor = 2 * q - 1
        counts = {}
        for name in roster.names():
            t = run_game(searcher_from_name(name, 3, q), AdversaryOracle(q), 3, q)
            if t.identified is None:
                print(f"q={q} {name}: aborted ({t.outcome})")
                bad += 1
                continue
            counts[name] = t.count
            if t.count < floor:
                print(f"q={q} {name}: only {t.count} queries, below {floor}")
                bad += 1
        rand = [c for n_, c in counts.items() if n_.startswith("random-lines:")]
        print(
            f"q={q} floor={floor}: plane={counts.get('plane')} "
            f"inductive={counts.get('inductive')} "
            f"two-round={counts.get('two-round')} "
            f"random-lines min={min(rand)} max={max(rand)} "
            f"mean={statistics.mean(rand):.2f} over {len(rand)} seeds"
        )
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
