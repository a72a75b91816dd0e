"""Run the seeded cross-validation suite and report per-route agreement.

    python3 scripts/oracle_triangle.py --seed 42 --cases 200
"""

from __future__ import annotations

import argparse
import collections
import time

from vpoly.verify import DEFAULT_TOLERANCE, oracle_triangle, suite_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    args = ap.parse_args()

    worst = collections.defaultdict(float)
    failures = 0
    start = time.perf_counter()
    for case in range(args.cases):
        spec, g = suite_instance(args.seed, case)
        result = oracle_triangle(spec, g, args.tolerance)
        worst[spec.family.value] = max(worst[spec.family.value], result.max_rel)
        failures += not result.ok
    elapsed = time.perf_counter() - start
    for family, rel in sorted(worst.items()):
        print(f"{family:10s} worst pairwise relative difference {rel:.3e}")
    print(f"{args.cases} cases, {failures} failures, {elapsed:.2f} s")


if __name__ == "__main__":
    main()
