"""Permanents of rectangular 0-1 matrices and the Bregman-type row-sum bound.

For an ``m x n`` matrix with ``m <= n`` the permanent sums over injections
from rows to columns.  Matrix text format::

    2 3
    110
    011
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from critset.bounds import log_factorial
from critset.errors import BudgetExceeded

EXACT_MAX_COLS = 24
NAIVE_MAX_COLS = 8


@dataclass(frozen=True)
class BinaryMatrix:
    rows: int
    cols: int
    bits: tuple[int, ...]  # bit j of bits[i] is entry (i, j)

    def __post_init__(self):
        if not 1 <= self.rows <= self.cols <= 64:
            raise ValueError(f"need 1 <= rows <= cols <= 64, got {self.rows}x{self.cols}")
        if len(self.bits) != self.rows or any(b >> self.cols for b in self.bits):
            raise ValueError("row masks do not fit the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        bits = []
        for row in rows:
            if len(row) != n:
                raise ValueError("ragged matrix")
            bits.append(sum(1 << j for j, v in enumerate(row) if int(v)))
        return cls(m, n, tuple(bits))

    @classmethod
    def ones(cls, m: int, n: int) -> "BinaryMatrix":
        return cls(m, n, ((1 << n) - 1,) * m)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @property
    def row_ones(self) -> tuple[int, ...]:
        return tuple(b.bit_count() for b in self.bits)

    def to_rows(self) -> list[list[int]]:
        return [[b >> j & 1 for j in range(self.cols)] for b in self.bits]


def parse_matrix_text(text: str) -> BinaryMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    try:
        m, n = (int(t) for t in lines[0].split())
    except (ValueError, IndexError):
        raise ValueError("first line must be 'm n'") from None
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"expected {m} matrix rows, got {len(body)}")
    for i, ln in enumerate(body, 1):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"row {i}: expected {n} characters from {{0,1}}")
    return BinaryMatrix.from_rows([[int(ch) for ch in ln] for ln in body])


def serialize_matrix_text(a: BinaryMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"] + ["".join(str(v) for v in row) for row in a.to_rows()]
    return "\n".join(lines) + "\n"


def permanent_exact(a: BinaryMatrix) -> int:
    """Permanent by recursion over rows, memoized on (row, used-column mask)."""
    if a.cols > EXACT_MAX_COLS:
        raise BudgetExceeded(f"permanent_exact supports at most {EXACT_MAX_COLS} columns")
    bits = a.bits
    m = a.rows

    @lru_cache(maxsize=None)
    def per(i, used):
        if i == m:
            return 1
        free = bits[i] & ~used
        total = 0
        while free:
            b = free & -free
            free ^= b
            total += per(i + 1, used | b)
        return total

    return per(0, 0)


def permanent_naive(a: BinaryMatrix) -> int:
    """Direct sum over all injections; a slow oracle for small matrices."""
    if a.cols > NAIVE_MAX_COLS:
        raise BudgetExceeded(f"permanent_naive supports at most {NAIVE_MAX_COLS} columns")
    rows = a.to_rows()
    return sum(
        all(rows[i][s] for i, s in enumerate(sigma))
        for sigma in permutations(range(a.cols), a.rows)
    )


def bregman_rect_bound(a: BinaryMatrix) -> float:
    """Natural log of ``n!^((n-m)/n) / (n-m)! * prod_i (r_i!)^(1/r_i)``.

    Rows without ones are rejected: the permanent is then 0 and the product
    term is undefined.
    """
    m, n = a.rows, a.cols
    r = a.row_ones
    if min(r) == 0:
        raise ValueError("matrix has a zero row; permanent is 0 and the bound is undefined")
    return (n - m) / n * log_factorial(n) - log_factorial(n - m) + sum(log_factorial(ri) / ri for ri in r)
