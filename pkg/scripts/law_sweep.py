"""Run every law suite over a range of seeds and tabulate pass counts.

    python scripts/law_sweep.py --seeds 0 10 --cases 50 --csv sweep.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from eulerstack.laws import SUITES, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", nargs=2, type=int, default=(0, 5), metavar=("FIRST", "STOP"))
    ap.add_argument("--cases", type=int, default=50)
    ap.add_argument("--suite", action="append", choices=sorted(SUITES))
    ap.add_argument("--csv", help="also write rows to this file")
    a = ap.parse_args(argv)

    names = a.suite or list(SUITES)
    rows = []
    for seed in range(*a.seeds):
        for name in names:
            t = time.perf_counter()
            r = run_suite(name, seed, a.cases)
            rows.append(
                {
                    "seed": seed,
                    "suite": name,
                    "passed": r.passed,
                    "failed": r.failed,
                    "seconds": f"{time.perf_counter() - t:.3f}",
                    "notes": " ".join(f"{k}={v}" for k, v in sorted(r.notes.items())),
                }
            )

    width = max(len(n) for n in names)
    print(f"{'seed':>6}  {'suite':<{width}}  {'passed':>6}  {'failed':>6}  {'seconds':>7}  notes")
    for row in rows:
        print(
            f"{row['seed']:>6}  {row['suite']:<{width}}  {row['passed']:>6}  {row['failed']:>6}  "
            f"{row['seconds']:>7}  {row['notes']}"
        )
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0 if all(r["failed"] == 0 for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
