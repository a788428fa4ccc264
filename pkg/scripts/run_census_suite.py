#!/usr/bin/env python3
"""Run the full verification suite over a range of field orders.

Writes one JSON report per order into --out-dir and prints a summary table.
The default list covers every order the suite treats as ground truth up to
q = 37; --long-run adds q = 49 and q = 64, --all adds the remaining supported
orders (their external-line spectra are conjecture-labeled in the reports).
"""

import argparse
import pathlib
import sys
import time

from twistedcubic import census

STANDARD_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37)
LONG_RUN_Q = (49, 64)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--long-run", action="store_true", help=f"also run q in {LONG_RUN_Q}")
    ap.add_argument("--all", action="store_true",
                    help="also run the conjecture-labeled orders")
    ap.add_argument("--timing", action="store_true",
                    help="record wall-clock runtime inside each report")
    args = ap.parse_args()

    orders = list(STANDARD_Q)
    if args.long_run:
        orders += list(LONG_RUN_Q)
    if args.all:
        orders += [q for q in census.SUPPORTED_Q if q not in orders]
    orders.sort()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    any_failed = False
    print(f"{'q':>4} {'checks':>7} {'orbits':>7} {'verdict':>8} {'seconds':>8}")
    for q in orders:
        started = time.monotonic()
        report = census.verify(q, timing=args.timing)
        elapsed = time.monotonic() - started
        orbits = sum(len(e["orbits"]) for e in report["classes"])
        verdict = "ok" if report["pass"] else "FAILED"
        any_failed |= not report["pass"]
        path = out_dir / f"census_q{q}.json"
        path.write_text(census.report_to_json(report), encoding="utf-8")
        print(f"{q:>4} {len(report['checks']):>7} {orbits:>7} {verdict:>8} {elapsed:>8.1f}")
        if not report["pass"]:
            for chk in report["checks"]:
                if not chk["pass"]:
                    print(f"     FAIL {chk['name']}: expected {chk['expected']}, "
                          f"got {chk['actual']}")
    print(f"reports written to {out_dir}/")
    return 1 if any_failed else 0


if __name__ == "__main__":
    sys.exit(main())
