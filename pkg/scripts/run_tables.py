"""Desk-scale expansion and f = C* tables, one block per domain/heuristic.

    python scripts/run_tables.py --count 50 --format markdown
"""

from __future__ import annotations

import argparse
import sys

from nbsearch.bench import ExperimentConfig, emit, run_experiment

ROWS = (
    ("pancake", 10, "gap", 0),
    ("pancake", 10, "gap", 2),
    ("tiles", 3, "md", 0),
    ("hanoi", 8, "pdb", 0),
    ("grid", 32, "octile", 0),
    ("maze", 32, "octile", 0),
    ("maze", 32, "zero", 0),
    ("random", 200, "oracle", 0),
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", default="markdown", choices=("csv", "json", "markdown"))
    ap.add_argument("--no-timing", action="store_true")
    args = ap.parse_args()
    ok = True
    for domain, size, heuristic, k in ROWS:
        label = f"{domain} {size} {heuristic}" + (f"-{k}" if k else "")
        config = ExperimentConfig(
            domain=domain, size=size, heuristic=heuristic, k=k, seed=args.seed, count=args.count, fmt=args.format
        )
        result = run_experiment(config)
        print(f"## {label}\n")
        sys.stdout.write(emit(result, args.format, timing=not args.no_timing).decode())
        print()
        for msg in result.failures:
            print(f"FAIL {msg}", file=sys.stderr)
        ok = ok and result.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
