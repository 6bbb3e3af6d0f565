#!/usr/bin/env python3
"""Run the full law suite over all three instances and print the report.

Usage: python3 scripts/run_all_laws.py [--trials N] [--seed S] [--grade D]
                                       [--max-size M] [--json]
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qeffectus.laws import LawSuiteConfig, run_law_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grade", type=int, default=2)
    ap.add_argument("--max-size", type=int, default=3, dest="max_size")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    config = LawSuiteConfig(
        trials=args.trials,
        seed=args.seed,
        grade=args.grade,
        max_size=args.max_size,
    )
    report = run_law_suite(config)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        print(report.to_text())
    return 0 if report.total_failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
