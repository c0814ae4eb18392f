"""Mean birth-time set size against the closed-form expectation, over a range of orders.

    python scripts/run_montecarlo.py --orders 2 4 8 16 --trials 2000 --seed 1
"""

import argparse
import csv
import sys

from critset import bounds as B
from critset.construct import random_latin_square, sample_uc_sizes


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--orders", type=int, nargs="+", default=[2, 4, 8, 16])
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args(argv)

    w = csv.writer(sys.stdout)
    w.writerow(["n", "trials", "mean", "se", "expected", "z", "min", "upper_bound"])
    for n in args.orders:
        s = sample_uc_sizes(random_latin_square(n, args.seed), args.trials, args.seed, workers=args.workers)
        want = B.wallis_expected_size(n)
        w.writerow([n, s.trials, f"{s.mean:.4f}", f"{s.se:.4f}", f"{want:.4f}",
                    f"{s.z_score(want):+.2f}", s.min, f"{B.critical_set_upper_bound(n):.4f}"])


if __name__ == "__main__":
    main()
