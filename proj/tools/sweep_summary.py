#!/usr/bin/env python3
"""Summarize one or more sweep CSV files produced by `piforge sweep`.

Groups rows by (family, k, variant) and prints the iteration counts in
size order, so growth rates are easy to eyeball, e.g.

    $ build/piforge sweep --family F --size-max 6 --k-min 2 --k-max 4 \
          --state-select peculiar --action-select cyclic --out f.csv
    $ tools/sweep_summary.py f.csv
"""

import argparse
import csv
import sys
from collections import defaultdict


def load(paths):
    groups = defaultdict(list)  # (family, k, variant) -> [(size, iters, converged)]
    skipped = []
    for path in paths:
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                if not row["iterations"] or row["iterations"].startswith("skipped:"):
                    skipped.append((row["family"], row["size"], row["k"]))
                    continue
                key = (row["family"], int(row["k"]), row["variant"])
                groups[key].append(
                    (int(row["size"]), int(row["iterations"]), row["converged"])
                )
    return groups, skipped


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", nargs="+", help="sweep CSV files")
    ap.add_argument("--ratios", action="store_true",
                    help="also print successive iteration ratios per group")
    args = ap.parse_args()

    groups, skipped = load(args.csv)
    if not groups:
        sys.exit("no usable rows")

    for (family, k, variant), rows in sorted(groups.items()):
        rows.sort()
        iters = [it for _, it, _ in rows]
        line = " ".join(f"{size}:{it}" for size, it, _ in rows)
        print(f"{family} k={k} {variant:24s} {line}")
        if args.ratios and len(iters) > 1:
            ratios = " ".join(f"{b / a:.3f}" for a, b in zip(iters, iters[1:]))
            print(f"{'':>8s} ratios {ratios}")
        if any(c != "true" for _, _, c in rows):
            unconverged = [size for size, _, c in rows if c != "true"]
            print(f"{'':>8s} NOT CONVERGED at sizes {unconverged}")

    if skipped:
        print(f"\n{len(skipped)} skipped cells:", file=sys.stderr)
        for family, size, k in skipped:
            print(f"  {family} size={size} k={k}", file=sys.stderr)


if __name__ == "__main__":
    main()
