"""Exact counts of partial Latin squares and Latin squares by enumeration.

All counts are Python integers.  Every enumeration first checks a cheap
upper estimate of its leaf count against a node budget and also counts
visited nodes as it goes, raising :class:`BudgetExceeded` rather than
running unbounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from critset.errors import BudgetExceeded
from critset.model import Shape

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class CensusTable:
    """Exact number of partial Latin squares of order ``n`` for each size ``k``."""

    order: int
    counts: tuple[int, ...]

    def to_csv(self) -> str:
        return "k,count\n" + "".join(f"{k},{c}\n" for k, c in enumerate(self.counts))

    @classmethod
    def from_csv(cls, order: int, text: str) -> "CensusTable":
        lines = text.strip().splitlines()
        if lines[0].strip() != "k,count":
            raise ValueError("missing 'k,count' header")
        counts = []
        for i, ln in enumerate(lines[1:]):
            k, c = ln.split(",")
            if int(k) != i:
                raise ValueError(f"rows out of order at k={k}")
            counts.append(int(c))
        if len(counts) != order * order + 1:
            raise ValueError(f"expected {order * order + 1} rows, got {len(counts)}")
        return cls(order, tuple(counts))


class _Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"enumeration exceeded {self.limit} nodes")


def row_fill_polynomial(n: int) -> list[int]:
    """Coefficients of ``sum_j C(n,j) n!/(n-j)! x^j``: partial rows with j symbols."""
    return [math.comb(n, j) * math.perm(n, j) for j in range(n + 1)]


def estimate_leaves(n: int, k: int) -> int:
    """Upper bound on size-``k`` fillings that respect rows only (columns ignored)."""
    row = row_fill_polynomial(n)
    poly = [1]
    for _ in range(n):
        out = [0] * (len(poly) + n)
        for i, a in enumerate(poly):
            for j, b in enumerate(row):
                out[i + j] += a * b
        poly = out
    return poly[k] if k < len(poly) else 0


def count_pls_by_size(n: int, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of partial Latin squares of order ``n`` with exactly ``k`` filled cells.

    Depth-first over cells in row-major order; each cell is left empty or
    gets a symbol free in its row and column.
    """
    if not 0 <= k <= n * n:
        raise ValueError(f"size must be in 0..{n * n}")
    est = estimate_leaves(n, k)
    if est > budget:
        raise BudgetExceeded(f"estimated {est} leaves for n={n}, k={k} exceeds budget {budget}")
    full = (1 << n) - 1
    last = n * n
    rows = [0] * n
    cols = [0] * n
    b = _Budget(budget)

    def rec(idx, fills, empties):
        b.tick()
        if idx == last:
            return 1
        r, c = divmod(idx, n)
        total = rec(idx + 1, fills, empties - 1) if empties else 0
        if fills:
            cand = full & ~(rows[r] | cols[c])
            while cand:
                bit = cand & -cand
                cand ^= bit
                rows[r] |= bit
                cols[c] |= bit
                total += rec(idx + 1, fills - 1, empties)
                rows[r] ^= bit
                cols[c] ^= bit
        return total

    return rec(0, k, n * n - k)


def census_table(n: int, budget: int = DEFAULT_BUDGET) -> CensusTable:
    """Counts for every size; the summed estimate is checked before any work."""
    est = sum(estimate_leaves(n, k) for k in range(n * n + 1))
    if est > budget:
        raise BudgetExceeded(f"estimated {est} leaves for the order-{n} census exceeds budget {budget}")
    return CensusTable(n, tuple(count_pls_by_size(n, k, budget) for k in range(n * n + 1)))


def count_pls_of_shape(shape: Shape, budget: int = DEFAULT_BUDGET) -> int:
    """Number of ways to put symbols on ``shape`` so the result is a partial Latin square.

    Rows are filled one at a time; within a row the cells take distinct
    symbols not yet used in their columns.
    """
    n = shape.order
    est = math.prod(math.perm(n, r) for r in shape.row_counts)
    if est > budget:
        raise BudgetExceeded(f"estimated {est} leaves for this shape exceeds budget {budget}")
    by_row = [[c - 1 for (r, c) in shape.cells if r == i] for i in range(1, n + 1)]
    full = (1 << n) - 1
    cols = [0] * n
    b = _Budget(budget)

    def fill_row(i):
        if i == n:
            return 1
        return place(i, 0, 0)

    def place(i, pos, used):
        b.tick()
        cells = by_row[i]
        if pos == len(cells):
            return fill_row(i + 1)
        c = cells[pos]
        cand = full & ~(used | cols[c])
        total = 0
        while cand:
            bit = cand & -cand
            cand ^= bit
            cols[c] |= bit
            total += place(i, pos + 1, used | bit)
            cols[c] ^= bit
        return total

    return fill_row(0)


def count_latin_squares(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of Latin squares of order ``n`` by backtracking over the full grid."""
    if not 1 <= n <= 5:
        raise BudgetExceeded(f"count_latin_squares is limited to 1 <= n <= 5, got {n}")
    full = (1 << n) - 1
    last = n * n
    rows = [0] * n
    cols = [0] * n
    b = _Budget(budget)

    def rec(idx):
        b.tick()
        if idx == last:
            return 1
        r, c = divmod(idx, n)
        cand = full & ~(rows[r] | cols[c])
        total = 0
        while cand:
            bit = cand & -cand
            cand ^= bit
            rows[r] |= bit
            cols[c] |= bit
            total += rec(idx + 1)
            rows[r] ^= bit
            cols[c] ^= bit
        return total

    return rec(0)


def enumerate_shapes(n: int, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Shape]:
    """Every ``k``-subset of the ``n x n`` cells, in lexicographic order."""
    total = math.comb(n * n, k)
    if total > budget:
        raise BudgetExceeded(f"C({n * n},{k}) = {total} shapes exceeds budget {budget}")
    cells = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
    for subset in combinations(cells, k):
        yield Shape.from_cells(n, subset)
