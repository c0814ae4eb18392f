"""Closed-form bounds on critical sets and partial Latin square counts.

Anything that can overflow a double is evaluated as a natural logarithm.
Real-argument factorials are ``x! = Gamma(x + 1)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from critset.model import Shape

SLACK_TOL = 1e-9
GAP_TOL = 1e-12
_LOG_OVERFLOW = 700.0


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x >= 0.5``."""
    if not x >= 0.5:
        raise ValueError(f"log_gamma needs x >= 0.5, got {x}")
    return math.lgamma(x)


def log_factorial(x: float) -> float:
    return log_gamma(x + 1)


def log_count(count: int) -> float:
    """Natural log of an exact non-negative integer; ``-inf`` for 0."""
    if count < 0:
        raise ValueError("count must be non-negative")
    return math.log(count) if count else -math.inf


def log_binomial(a: int, b: int) -> float:
    """``ln C(a, b)``, exact-integer based up to ``a = 10^4``, log-gamma beyond."""
    if a <= 10_000:
        return math.log(math.comb(a, b))
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def stirling_log_factorial_bounds(n: int) -> tuple[float, float]:
    """Log of ``sqrt(2 pi n)(n/e)^n`` and of that times ``e^(1/(12n))``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lower = 0.5 * math.log(2 * math.pi * n) + n * math.log(n) - n
    return lower, lower + 1 / (12 * n)


def log_binomial_upper(a: int, b: int) -> float:
    """Log of ``(e a / b)^b``, an upper bound on ``C(a, b)``."""
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    if b == 0:
        return 0.0
    return b * (1 + math.log(a) - math.log(b))


def wallis_ratio(n: int) -> float:
    """``(2n-2)(2n-4)...2 / ((2n-1)(2n-3)...1)``; 1 for ``n = 1``."""
    r = 1.0
    for i in range(1, n):
        r *= 2 * i / (2 * i + 1)
    return r


def wallis_expected_size(n: int) -> float:
    """Expected size of the birth-time uniquely completable set."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * n * (1 - wallis_ratio(n))


def critical_set_upper_bound(n: int) -> float:
    """``n^2 - n sqrt(n pi) / 2``: every Latin square has a critical set smaller than this."""
    return n * n - n * math.sqrt(n * math.pi) / 2


def shape_count_bound(shape: Shape) -> float:
    """Log of the row/column-count bound on partial Latin squares of a given shape."""
    n = shape.order
    lfn = log_factorial(n)
    rows = sum((n - r) / n * lfn - log_factorial(n - r) for r in shape.row_counts)
    cols = sum(log_factorial(n - j) / (n - j) for c in shape.col_counts for j in range(c))
    return rows + cols


def pls_count_bound(n: int, k: int) -> float:
    """Log of the bound on the number of partial Latin squares of order ``n`` and size ``k``."""
    if not 0 <= k <= n * n:
        raise ValueError(f"size must be in 0..{n * n}")
    lfn = log_factorial(n)
    return (
        log_binomial(n * n, k)
        + (2 * n - k / n) * lfn
        + n * (3 + math.log(2 * math.pi * n) ** 2 / 4)
        - 2 * n * log_factorial(n - k / n)
        - k
    )


def latin_count_lower(n: int) -> float:
    """Log of ``(n!)^(2n) / n^(n^2)``, a lower bound on the number of Latin squares."""
    return 2 * n * log_factorial(n) - n * n * math.log(n)


def lower_bound_gap(n: int, c: float) -> float:
    """``log(c^{3c} n^c) - log(e^{3c} e^{ln(2 pi n)^2 / n})``.

    Non-positive exactly where a Latin square of order ``n`` may have all
    its critical sets of size ``<= n^2 (1 - c)`` as far as counting goes.
    """
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    return 3 * c * math.log(c) + c * math.log(n) - 3 * c - math.log(2 * math.pi * n) ** 2 / n


def lower_bound_endpoint(n: int) -> float:
    """``e^(1 + 1/sqrt(n)) / n^(1/3)``, claimed to make the gap positive for large ``n``."""
    return math.exp(1 + 1 / math.sqrt(n)) / n ** (1 / 3)


@dataclass(frozen=True)
class LowerBoundSolution:
    order: int
    c: float
    k_lower: float
    gap: float
    bracketed: bool  # False when the monotone bracket failed and a scan was used


def _bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if (fm <= 0) == (flo <= 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def solve_lower_bound(n: int) -> LowerBoundSolution:
    """Root of :func:`lower_bound_gap` in ``c``, and ``k = n^2 (1 - c)``.

    For ``c >= n^(-1/3)`` the gap increases in ``c`` and it is negative at
    ``c = n^(-1/3)``, so bisection on ``[n^(-1/3), 1)`` finds the largest
    feasible ``c``.  For small ``n`` the gap may stay negative up to 1; then
    a grid scan over ``(0, 1)`` reports the supremum of feasible ``c``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    f = lambda c: lower_bound_gap(n, c)  # noqa: E731
    lo = n ** (-1 / 3)
    hi = math.nextafter(1.0, 0.0)
    if f(lo) < 0 < f(hi):
        c = _bisect(f, lo, hi)
        return LowerBoundSolution(n, c, n * n * (1 - c), f(c), True)

    grid = [i / 4096 for i in range(1, 4096)] + [hi]
    feasible = [c for c in grid if f(c) <= 0]
    if not feasible:
        c = grid[0]
    else:
        c = feasible[-1]
        nxt = grid.index(c) + 1
        if nxt < len(grid):
            c = _bisect(f, c, grid[nxt])
    return LowerBoundSolution(n, c, n * n * (1 - c), f(c), False)


def prior_lcs_lower_bound(n: int) -> float:
    """Earlier lower bound on the largest critical set size of order ``n``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    ln = math.log(n)
    return (
        n * n * (1 - (2 + math.log(2)) / ln)
        + n * (1 + (2 * math.log(2) + math.log(2 * math.pi)) / ln)
        - math.log(2) / ln
    )


# -- reports ---------------------------------------------------------------


@dataclass
class BoundValue:
    name: str
    log_value: Optional[float]
    value: Optional[float]
    paper_ref: str

    @property
    def value_or_inf(self):
        if self.value is not None:
            return self.value
        if self.log_value is None:
            return None
        return math.exp(self.log_value) if self.log_value < _LOG_OVERFLOW else math.inf


@dataclass
class Comparison:
    bound: str
    oracle: str
    slack: float
    holds: bool


@dataclass
class BoundReport:
    order: int
    size: Optional[int] = None
    values: list[BoundValue] = field(default_factory=list)
    comparisons: list[Comparison] = field(default_factory=list)

    def add(self, name, *, value=None, log_value=None, ref=""):
        self.values.append(BoundValue(name, log_value, value, ref))
        return self

    def compare(self, bound: str, bound_log: float, oracle: str, oracle_log: float) -> Comparison:
        """Record ``bound >= oracle`` in log space."""
        slack = bound_log - oracle_log
        cmp = Comparison(bound, oracle, slack, slack >= -SLACK_TOL)
        self.comparisons.append(cmp)
        return cmp

    def __getitem__(self, name) -> BoundValue:
        for v in self.values:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.comparisons)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "size": self.size,
            "values": [
                {
                    "name": v.name,
                    "log_value": v.log_value,
                    "value_or_inf": _jsonable(v.value_or_inf),
                    "paper_ref": v.paper_ref,
                }
                for v in self.values
            ],
            "comparisons": [asdict(c) for c in self.comparisons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"order = {self.order}"]
        if self.size is not None:
            lines.append(f"size = {self.size}")
        for v in self.values:
            if v.log_value is not None:
                lines.append(f"{v.name}.log_value = {fmt(v.log_value)}")
            lines.append(f"{v.name}.value_or_inf = {fmt(v.value_or_inf)}")
            lines.append(f"{v.name}.paper_ref = {v.paper_ref}")
        for c in self.comparisons:
            key = f"{c.bound}>={c.oracle}"
            lines.append(f"{key}.slack = {fmt(c.slack)}")
            lines.append(f"{key}.holds = {str(c.holds).lower()}")
        return "\n".join(lines) + "\n"


def fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


REFS = {
    "wallis_expected_size": "E|C| = n^2 (1 - (2n-2)(2n-4)...2 / ((2n-1)(2n-3)...1))",
    "critical_set_upper_bound": "critical set of size < n^2 - n sqrt(n pi)/2",
    "pls_count_bound": "#PLS(n,k) <= C(n^2,k) n!^(2n-k/n) e^(n(3+ln(2 pi n)^2/4)) / ((n-k/n)!^(2n) e^k)",
    "latin_count_lower": "L(n) >= (n!)^(2n) / n^(n^2)",
    "lower_bound_c": "root of c^(3c) n^c = e^(3c) e^(ln(2 pi n)^2/n)",
    "lower_bound_k": "max scs(L) >= n^2 (1 - c)",
    "lower_bound_c_scaled": "c n^(1/3) -> e",
    "prior_lcs_lower_bound": "lcs(n) >= n^2(1-(2+ln2)/ln n) + n(1+(2 ln2+ln 2pi)/ln n) - ln2/ln n",
    "shape_count_bound": "#PLS(shape) <= prod n!^((n-r_i)/n)/(n-r_i)! * prod prod (n-j)!^(1/(n-j))",
    "bregman_rect_bound": "per(A) <= n!^((n-m)/n)/(n-m)! prod (r_i!)^(1/r_i)",
}


def bound_report(n: int, k: Optional[int] = None) -> BoundReport:
    """Every closed-form quantity at order ``n`` (and size ``k`` if given)."""
    rep = BoundReport(n, k)
    rep.add("wallis_expected_size", value=wallis_expected_size(n), ref=REFS["wallis_expected_size"])
    rep.add("critical_set_upper_bound", value=critical_set_upper_bound(n), ref=REFS["critical_set_upper_bound"])
    if k is not None:
        rep.add("pls_count_bound", log_value=pls_count_bound(n, k), ref=REFS["pls_count_bound"])
    rep.add("latin_count_lower", log_value=latin_count_lower(n), ref=REFS["latin_count_lower"])
    if n >= 2:
        sol = solve_lower_bound(n)
        rep.add("lower_bound_c", value=sol.c, ref=REFS["lower_bound_c"])
        rep.add("lower_bound_c_scaled", value=sol.c * n ** (1 / 3), ref=REFS["lower_bound_c_scaled"])
        rep.add("lower_bound_k", value=sol.k_lower, ref=REFS["lower_bound_k"])
        rep.add("lower_bound_gap", value=sol.gap, ref=REFS["lower_bound_c"])
        rep.add("lower_bound_bracketed", value=sol.bracketed, ref=REFS["lower_bound_c"])
        rep.add("prior_lcs_lower_bound", value=prior_lcs_lower_bound(n), ref=REFS["prior_lcs_lower_bound"])
    return rep
