"""``critset`` command line.

Exit codes: 0 success, 2 usage, 3 I/O, 4 semantic input error, 5 budget or
guard exceeded.  Numbers print with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from critset import __version__
from critset import bounds as B
from critset.census import DEFAULT_BUDGET, census_table, count_latin_squares
from critset.completion import classify
from critset.construct import (
    birth_time_construct,
    cyclic_latin_square,
    latest_born_first,
    minimize_to_critical,
    random_birth_order,
    random_latin_square,
    replay_certifies,
    sample_uc_sizes,
    scs_exhaustive,
)
from critset.errors import BudgetExceeded
from critset.model import (
    MAX_ORDER,
    LatinSquare,
    SquareFormatError,
    parse_square_text,
    serialize_square_text,
)
from critset.permanent import (
    EXACT_MAX_COLS,
    bregman_rect_bound,
    parse_matrix_text,
    permanent_exact,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from None


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None


def _read_pls(path):
    try:
        return parse_square_text(_read(path))
    except SquareFormatError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None


def _read_square(path):
    pls = _read_pls(path)
    if not pls.is_complete():
        raise CliError(EXIT_INPUT, f"{path}: not a complete Latin square ({len(pls)} of {pls.order ** 2} cells)")
    return LatinSquare.from_pls(pls)


def _emit(args, result: dict, text_lines=None):
    """Print ``result`` as key = value lines or as one JSON document."""
    if args.format == "json":
        doc = {
            "command": args.command,
            "version": __version__,
            "seed": getattr(args, "seed", None),
            "guards": {"budget": getattr(args, "budget", None), "max_order": MAX_ORDER},
            "result": result,
        }
        print(json.dumps(doc, indent=2, default=_json_default))
        return
    if text_lines is None:
        text_lines = [f"{k} = {B.fmt(v)}" for k, v in result.items() if not isinstance(v, (list, dict))]
    for ln in text_lines:
        print(ln)


def _json_default(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    raise TypeError(type(x))


def _square_for(args):
    if args.family == "cyclic":
        return cyclic_latin_square(args.n)
    return random_latin_square(args.n, args.seed)


# -- subcommands -----------------------------------------------------------


def cmd_gen(args):
    sq = _square_for(args)
    text = serialize_square_text(sq)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_construct(args):
    sq = _read_square(args.inp)
    order = random_birth_order(sq, args.seed)
    uc = birth_time_construct(sq, order, accumulated=args.accumulated)
    result = {
        "order": sq.order,
        "seed": args.seed,
        "uc_size": len(uc),
        "replay_certified": replay_certifies(sq, order, uc) if not args.accumulated else None,
    }
    out = uc
    if args.minimize:
        out = minimize_to_critical(uc, sq, latest_born_first(order, uc))
        result["critical_size"] = len(out)
    result["output_size"] = len(out)
    text = serialize_square_text(out)
    if args.out:
        _write(args.out, text)
    elif args.format != "json":
        sys.stdout.write(text)
    result["square"] = out.grid()
    _emit(args, result)
    return EXIT_OK


def cmd_check(args):
    pls = _read_pls(args.inp)
    verdict, cc = classify(pls)
    completions = "≥2" if cc.count >= 2 else str(cc.count)
    _emit(args, {"order": pls.order, "size": len(pls), "completions": completions, "verdict": verdict})
    return EXIT_OK


def cmd_montecarlo(args):
    sq = _square_for(args)
    stats = sample_uc_sizes(sq, args.trials, args.seed, workers=args.workers)
    expected = B.wallis_expected_size(args.n)
    bound = B.critical_set_upper_bound(args.n)
    result = {
        "order": args.n,
        "family": args.family,
        "trials": stats.trials,
        "seed": args.seed,
        "mean": stats.mean,
        "sd": stats.sd,
        "se": stats.se,
        "min": stats.min,
        "max": stats.max,
        "wallis_expected_size": expected,
        "critical_set_upper_bound": bound,
        "z_score": stats.z_score(expected),
        "min_below_bound": stats.min <= bound,
    }
    if args.format == "json":
        result["sizes"] = list(stats.sizes)
    _emit(args, result)
    return EXIT_OK


def cmd_census(args):
    try:
        table = census_table(args.n, args.budget)
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from None
    if args.out:
        _write(args.out, table.to_csv())
    rows = []
    for k, count in enumerate(table.counts):
        bound = B.pls_count_bound(args.n, k)
        slack = bound - B.log_count(count)
        rows.append({
            "k": k,
            "count": count,
            "log_bound": bound,
            "slack": slack,
            "verdict": "holds" if slack >= -B.SLACK_TOL else "fails",
        })
    lines = ["k,count,log_bound,slack,verdict"] + [
        f"{r['k']},{r['count']},{B.fmt(r['log_bound'])},{B.fmt(r['slack'])},{r['verdict']}" for r in rows
    ]
    _emit(args, {"order": args.n, "rows": rows}, lines)
    return EXIT_OK


def cmd_permanent(args):
    try:
        a = parse_matrix_text(_read(args.inp))
    except ValueError as exc:
        raise CliError(EXIT_INPUT, f"{args.inp}: {exc}") from None
    if a.cols > EXACT_MAX_COLS:
        raise CliError(EXIT_BUDGET, f"matrix has {a.cols} columns; limit is {EXACT_MAX_COLS}")
    per = permanent_exact(a)
    result = {"rows": a.rows, "cols": a.cols, "permanent": per}
    if min(a.row_ones) == 0:
        result.update(verdict="zero-row", log_bound=None, bound=None, slack=None)
    else:
        lb = B.log_count(per)
        bound = bregman_rect_bound(a)
        slack = bound - lb
        result.update(
            log_bound=bound,
            bound=math.exp(bound) if bound < 700 else math.inf,
            slack=slack,
            verdict="holds" if slack >= -B.SLACK_TOL else "fails",
        )
        if per == 0:
            result["slack"] = math.inf
    _emit(args, result)
    return EXIT_OK


def cmd_bounds(args):
    if args.k is not None and not 0 <= args.k <= args.n * args.n:
        raise CliError(EXIT_USAGE, f"--k must lie in 0..{args.n * args.n}")
    rep = B.bound_report(args.n, args.k)
    if args.n <= 4:
        # a lower bound: the exact count plays the bound role
        rep.compare("log_latin_squares", B.log_count(count_latin_squares(args.n)),
                    "latin_count_lower", B.latin_count_lower(args.n))
    if args.k is not None and args.n <= 3:
        from critset.census import count_pls_by_size

        rep.compare("pls_count_bound", B.pls_count_bound(args.n, args.k),
                    "log_pls_count", B.log_count(count_pls_by_size(args.n, args.k)))
    if args.format == "json":
        _emit(args, rep.to_dict())
    else:
        sys.stdout.write(rep.to_text())
    return EXIT_OK


def cmd_scs(args):
    sq = _read_square(args.inp)
    if sq.order > 4:
        raise CliError(EXIT_BUDGET, f"exhaustive search is limited to order <= 4, got {sq.order}")
    best = scs_exhaustive(sq)
    result = {"order": sq.order, "scs": len(best), "witness": [list(e) for e in best.entries]}
    lines = [f"order = {sq.order}", f"scs = {len(best)}", "witness:"]
    lines.append(serialize_square_text(best).rstrip("\n"))
    _emit(args, result, lines)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _order(s):
    n = int(s)
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must be in 1..{MAX_ORDER}")
    return n


def _seed(s):
    v = int(s)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    p = argparse.ArgumentParser(prog="critset", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a Latin square")
    g.add_argument("--n", type=_order, required=True)
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("--family", choices=["random", "cyclic"], default="random")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("construct", parents=[common], help="birth-time uniquely completable set")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--seed", type=_seed, default=0)
    c.add_argument("--minimize", action="store_true")
    c.add_argument("--accumulated", action="store_true",
                   help="test forcing against kept entries only (variant)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", parents=[common], help="classify a partial Latin square")
    k.add_argument("--in", dest="inp", required=True)
    k.set_defaults(func=cmd_check)

    m = sub.add_parser("montecarlo", parents=[common], help="sample constructed set sizes")
    m.add_argument("--n", type=_order, required=True)
    m.add_argument("--trials", type=_positive, default=1000)
    m.add_argument("--seed", type=_seed, default=0)
    m.add_argument("--family", choices=["random", "cyclic"], default="random")
    m.add_argument("--workers", type=_positive, default=1)
    m.set_defaults(func=cmd_montecarlo)

    s = sub.add_parser("census", parents=[common], help="count partial Latin squares by size")
    s.add_argument("--n", type=_order, required=True)
    s.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    s.add_argument("--out")
    s.set_defaults(func=cmd_census)

    pm = sub.add_parser("permanent", parents=[common], help="permanent and row-sum bound")
    pm.add_argument("--in", dest="inp", required=True)
    pm.set_defaults(func=cmd_permanent)

    b = sub.add_parser("bounds", parents=[common], help="evaluate closed-form bounds")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int)
    b.set_defaults(func=cmd_bounds)

    sc = sub.add_parser("scs", parents=[common], help="smallest critical set by exhaustive search")
    sc.add_argument("--in", dest="inp", required=True)
    sc.set_defaults(func=cmd_scs)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bounds" and args.n < 1:
        parser.error("--n must be >= 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"critset {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"critset {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
