"""Shared brute-force oracles and hypothesis strategies.

The oracles deliberately avoid the package's search code: they enumerate
by itertools and check properties directly.
"""

from functools import lru_cache
from itertools import permutations, product

from hypothesis import strategies as st

from critset.model import Entry, LatinSquare, PartialLatinSquare


@lru_cache(maxsize=None)
def all_latin_squares(n):
    """Every Latin square of order n as a tuple of row tuples (n <= 4)."""
    perms = list(permutations(range(1, n + 1)))
    out = []

    def extend(rows):
        if len(rows) == n:
            out.append(tuple(rows))
            return
        for p in perms:
            if all(p[j] != r[j] for r in rows for j in range(n)):
                extend(rows + [p])

    extend([])
    return tuple(out)


def brute_completions(pls):
    return sum(
        all(sq[r - 1][c - 1] == k for r, c, k in pls.entries)
        for sq in all_latin_squares(pls.order)
    )


def is_partial_latin(grid):
    n = len(grid)
    for i in range(n):
        row = [v for v in grid[i] if v]
        col = [grid[r][i] for r in range(n) if grid[r][i]]
        if len(row) != len(set(row)) or len(col) != len(set(col)):
            return False
    return True


@lru_cache(maxsize=None)
def brute_pls_counts(n):
    """Counts by size from all (n+1)^(n^2) fillings (n <= 3)."""
    counts = [0] * (n * n + 1)
    for flat in product(range(n + 1), repeat=n * n):
        grid = [flat[i * n:(i + 1) * n] for i in range(n)]
        if is_partial_latin(grid):
            counts[sum(1 for v in flat if v)] += 1
    return tuple(counts)


@st.composite
def pls_strategy(draw, min_order=1, max_order=5):
    """A random partial Latin square grown by accepted insertions."""
    n = draw(st.integers(min_order, max_order))
    coords = st.tuples(st.integers(1, n), st.integers(1, n), st.integers(1, n))
    raw = draw(st.lists(coords, max_size=n * n))
    pls = PartialLatinSquare.empty(n)
    for e in raw:
        try:
            pls = pls.with_entry(e)
        except ValueError:
            pass
    return pls


@st.composite
def sub_of_square(draw, n):
    """A random latin square of order n (n <= 4) and a random subset of it."""
    sq = LatinSquare.from_rows(draw(st.sampled_from(all_latin_squares(n))))
    keep = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    entries = [e for e, k in zip(sq.entries(), keep) if k]
    return sq, PartialLatinSquare.from_entries(n, entries)


def E(r, c, k):
    return Entry(r, c, k)
