"""Run the desk-scale optimality suites and print per-suite timings.

``--scale 0.1`` runs a tenth of every suite.
"""

from __future__ import annotations

import argparse
import math
import sys

from nbsearch.suites import DESK_SCALE, run_suites, scaled


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--no-check", action="store_true", help="skip the per-expansion optimality sweep")
    args = ap.parse_args()
    suites = DESK_SCALE if args.scale == 1 else scaled(DESK_SCALE, args.scale)
    total = 0.0
    bad = 0
    for spec in suites:
        run = run_suites([spec], check_expansions=not args.no_check)
        recs = run.records
        mism = sum(1 for r in recs if r.mismatches())
        sub = sum(1 for r in recs if r.suboptimal > 0)
        reopen = sum(r.runs["nbs"].reopened for r in recs)
        q = max(
            (r.runs["nbs"].queue_cost / (r.runs["nbs"].insertions * math.log2(r.runs["nbs"].insertions + 2))
             for r in recs if r.runs["nbs"].insertions),
            default=0.0,
        )
        total += run.solve_seconds
        bad += mism + sub + reopen
        print(
            f"{spec.name:10s} n={len(recs):5d} solve={run.solve_seconds:7.1f}s check={run.check_seconds:6.1f}s "
            f"mismatches={mism} suboptimal={sub} reopened={reopen} queue_ratio={q:.3f}",
            flush=True,
        )
    print(f"total solve time {total:.1f}s")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
