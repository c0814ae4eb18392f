"""Exact partial Latin square counts by size with the log-count bound and its slack.

    python scripts/census_report.py --orders 1 2 3
"""

import argparse
import csv
import sys

from critset import bounds as B
from critset.census import census_table


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--orders", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--budget", type=int, default=10**9)
    args = p.parse_args(argv)

    w = csv.writer(sys.stdout)
    w.writerow(["n", "k", "count", "log_count", "log_bound", "slack"])
    for n in args.orders:
        for k, c in enumerate(census_table(n, args.budget).counts):
            lc = B.log_count(c)
            bd = B.pls_count_bound(n, k)
            w.writerow([n, k, c, f"{lc:.6f}", f"{bd:.6f}", f"{bd - lc:.6f}"])


if __name__ == "__main__":
    main()
