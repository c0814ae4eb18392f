"""Largest-critical-set lower bound from the counting argument next to the earlier bound.

    python scripts/bound_sweep.py --max-exp 6
"""

import argparse
import csv
import sys

from critset import bounds as B


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-exp", type=int, default=6, help="sweep n = 10^1 .. 10^max_exp")
    p.add_argument("--per-decade", type=int, default=2)
    args = p.parse_args(argv)

    ns = sorted({round(10 ** (e / args.per_decade)) for e in range(args.per_decade, args.max_exp * args.per_decade + 1)})
    w = csv.writer(sys.stdout)
    w.writerow(["n", "c", "c_n13", "k_lower", "k_lower_over_n2", "prior", "prior_over_n2", "upper", "bracketed"])
    for n in ns:
        s = B.solve_lower_bound(n)
        prior = B.prior_lcs_lower_bound(n)
        w.writerow([n, f"{s.c:.6g}", f"{s.c * n ** (1 / 3):.4f}", f"{s.k_lower:.6g}", f"{s.k_lower / n**2:.6f}",
                    f"{prior:.6g}", f"{prior / n**2:.6f}", f"{B.critical_set_upper_bound(n):.6g}", s.bracketed])


if __name__ == "__main__":
    main()
