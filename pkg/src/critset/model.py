"""Partial Latin squares, Latin squares and shapes.

Coordinates and symbols are 1-based everywhere outside this module's
internals: rows, columns and symbols all live in ``1..n``.  Occupancy is
tracked with bitmasks. Bit ``k-1`` of ``row_used[i-1]`` is set when
symbol ``k`` appears in row ``i``, so the order is capped at 64.

Text format (one square per file)::

    3
    1 2 3
    0 0 1
    0 0 0

The first line is the order, then ``n`` lines of ``n`` tokens, ``0`` for an
empty cell.  A trailing newline is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_ORDER = 64


class Entry(NamedTuple):
    """A filled cell ``(row, col; symbol)``."""

    row: int
    col: int
    symbol: int

    def __str__(self):
        return f"({self.row},{self.col};{self.symbol})"


class LatinViolation(ValueError):
    """An entry would repeat a symbol in a row/column or refill a cell."""


class SquareFormatError(ValueError):
    """Malformed square text."""


def _check_order(n):
    if not isinstance(n, int) or n < 1 or n > MAX_ORDER:
        raise ValueError(f"order must be an integer in 1..{MAX_ORDER}, got {n!r}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class PartialLatinSquare:
    """Immutable partial Latin square.

    Build instances with :meth:`empty`, :meth:`from_entries` or
    :meth:`with_entry`; those reject anything that breaks the Latin
    property.  The raw constructor does not check, which is what
    :func:`validate` is for.
    """

    order: int
    entries: tuple[Entry, ...]
    row_used: tuple[int, ...]
    col_used: tuple[int, ...]
    cell_filled: int

    @classmethod
    def empty(cls, n: int) -> "PartialLatinSquare":
        _check_order(n)
        return cls(n, (), (0,) * n, (0,) * n, 0)

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[Sequence[int]]) -> "PartialLatinSquare":
        _check_order(n)
        rows = [0] * n
        cols = [0] * n
        filled = 0
        out = []
        for raw in entries:
            e = Entry(*raw)
            _add_checked(n, e, rows, cols, filled)
            filled |= 1 << ((e.row - 1) * n + e.col - 1)
            out.append(e)
        out.sort()
        return cls(n, tuple(out), tuple(rows), tuple(cols), filled)

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[int]]) -> "PartialLatinSquare":
        n = len(grid)
        return cls.from_entries(
            n,
            (Entry(i + 1, j + 1, v) for i, row in enumerate(grid) for j, v in enumerate(row) if v),
        )

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __contains__(self, e):
        r, c, k = e
        return self.symbol_at(r, c) == k

    def is_filled(self, row: int, col: int) -> bool:
        return bool(self.cell_filled >> ((row - 1) * self.order + col - 1) & 1)

    def symbol_at(self, row: int, col: int) -> int:
        """Symbol in cell ``(row, col)``, or 0 if empty."""
        if not self.is_filled(row, col):
            return 0
        for e in self.entries:
            if e.row == row and e.col == col:
                return e.symbol
        raise AssertionError(f"cell ({row},{col}) flagged filled but has no entry")

    def grid(self) -> list[list[int]]:
        n = self.order
        g = [[0] * n for _ in range(n)]
        for r, c, k in self.entries:
            g[r - 1][c - 1] = k
        return g

    def with_entry(self, e: Sequence[int]) -> "PartialLatinSquare":
        e = Entry(*e)
        n = self.order
        rows = list(self.row_used)
        cols = list(self.col_used)
        _add_checked(n, e, rows, cols, self.cell_filled)
        filled = self.cell_filled | 1 << ((e.row - 1) * n + e.col - 1)
        entries = tuple(sorted(self.entries + (e,)))
        return PartialLatinSquare(n, entries, tuple(rows), tuple(cols), filled)

    def without_entry(self, e: Sequence[int]) -> "PartialLatinSquare":
        e = Entry(*e)
        if e not in self.entries:
            raise KeyError(f"{e} not in partial Latin square")
        return PartialLatinSquare.from_entries(self.order, (x for x in self.entries if x != e))

    def is_complete(self) -> bool:
        return len(self.entries) == self.order * self.order

    def __str__(self):
        return serialize_square_text(self)


def _add_checked(n, e, rows, cols, filled):
    r, c, k = e
    for name, v in (("row", r), ("col", c), ("symbol", k)):
        if not isinstance(v, int) or not 1 <= v <= n:
            raise LatinViolation(f"{name} {v!r} out of range 1..{n} in entry {e}")
    if filled >> ((r - 1) * n + c - 1) & 1:
        raise LatinViolation(f"cell ({r},{c}) already filled")
    bit = 1 << (k - 1)
    if rows[r - 1] & bit:
        raise LatinViolation(f"duplicate symbol in row {r} (symbol {k} at col {c})")
    if cols[c - 1] & bit:
        raise LatinViolation(f"duplicate symbol in column {c} (symbol {k} at row {r})")
    rows[r - 1] |= bit
    cols[c - 1] |= bit


@dataclass(frozen=True)
class LatinSquare:
    """A completely filled Latin square, stored as a tuple of row tuples."""

    order: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_order(self.order)
        n = self.order
        want = set(range(1, n + 1))
        if len(self.grid) != n or any(len(row) != n for row in self.grid):
            raise ValueError(f"grid is not {n}x{n}")
        for i, row in enumerate(self.grid, 1):
            if set(row) != want:
                raise ValueError(f"row {i} is not a permutation of 1..{n}")
        for j in range(n):
            if {row[j] for row in self.grid} != want:
                raise ValueError(f"column {j + 1} is not a permutation of 1..{n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatinSquare":
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @classmethod
    def from_pls(cls, pls: PartialLatinSquare) -> "LatinSquare":
        if not pls.is_complete():
            raise ValueError(f"partial Latin square has {len(pls)} of {pls.order ** 2} cells filled")
        return cls.from_rows(pls.grid())

    def entries(self) -> list[Entry]:
        return [Entry(i + 1, j + 1, v) for i, row in enumerate(self.grid) for j, v in enumerate(row)]

    def to_pls(self) -> PartialLatinSquare:
        return PartialLatinSquare.from_entries(self.order, self.entries())

    def __getitem__(self, cell):
        r, c = cell
        return self.grid[r - 1][c - 1]


@dataclass(frozen=True)
class Shape:
    """Filled positions of a partial Latin square, without symbols."""

    order: int
    cells: tuple[tuple[int, int], ...]
    row_counts: tuple[int, ...]
    col_counts: tuple[int, ...]

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[tuple[int, int]]) -> "Shape":
        _check_order(n)
        cells = tuple(sorted(set(cells)))
        rows = [0] * n
        cols = [0] * n
        for r, c in cells:
            if not (1 <= r <= n and 1 <= c <= n):
                raise ValueError(f"cell ({r},{c}) outside a {n}x{n} array")
            rows[r - 1] += 1
            cols[c - 1] += 1
        return cls(n, cells, tuple(rows), tuple(cols))

    def __len__(self):
        return len(self.cells)


def validate(pls: PartialLatinSquare) -> bool:
    """True iff ``pls`` has the partial Latin property and consistent masks."""
    n = pls.order
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        return False
    rows = [0] * n
    cols = [0] * n
    filled = 0
    for e in pls.entries:
        try:
            _add_checked(n, Entry(*e), rows, cols, filled)
        except (LatinViolation, TypeError):
            return False
        filled |= 1 << ((e[0] - 1) * n + e[1] - 1)
    return (
        tuple(rows) == tuple(pls.row_used)
        and tuple(cols) == tuple(pls.col_used)
        and filled == pls.cell_filled
    )


def shape_of(pls: PartialLatinSquare) -> Shape:
    return Shape.from_cells(pls.order, ((e.row, e.col) for e in pls.entries))


def is_contained_in(pls: PartialLatinSquare, square: LatinSquare) -> bool:
    if pls.order != square.order:
        raise ValueError(f"order mismatch: {pls.order} vs {square.order}")
    return all(square.grid[r - 1][c - 1] == k for r, c, k in pls.entries)


def parse_square_text(text: str) -> PartialLatinSquare:
    """Parse the text format into a partial Latin square.

    Errors name the offending line, row and column.
    """
    if not text.endswith("\n"):
        raise SquareFormatError("missing trailing newline")
    lines = text[:-1].split("\n")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise SquareFormatError(f"line 1: order must be an integer, got {lines[0]!r}") from None
    if not 1 <= n <= MAX_ORDER:
        raise SquareFormatError(f"line 1: order {n} outside 1..{MAX_ORDER}")
    if len(lines) != n + 1:
        raise SquareFormatError(f"expected {n} rows after the order line, got {len(lines) - 1}")

    rows = [0] * n
    cols = [0] * n
    filled = 0
    entries = []
    for i, line in enumerate(lines[1:], 1):
        toks = line.split()
        if len(toks) != n:
            raise SquareFormatError(f"row {i}: expected {n} tokens, got {len(toks)}")
        for j, tok in enumerate(toks, 1):
            if not tok.isdigit():
                raise SquareFormatError(f"row {i}, col {j}: bad token {tok!r}")
            k = int(tok)
            if k == 0:
                continue
            if k > n:
                raise SquareFormatError(f"row {i}, col {j}: symbol {k} out of range 0..{n}")
            try:
                _add_checked(n, Entry(i, j, k), rows, cols, filled)
            except LatinViolation as exc:
                raise SquareFormatError(f"row {i}, col {j}: {exc}") from None
            filled |= 1 << ((i - 1) * n + j - 1)
            entries.append(Entry(i, j, k))
    return PartialLatinSquare(n, tuple(entries), tuple(rows), tuple(cols), filled)


def serialize_square_text(square) -> str:
    """Render a :class:`PartialLatinSquare` or :class:`LatinSquare` as text."""
    grid = square.grid() if isinstance(square, PartialLatinSquare) else square.grid
    lines = [str(square.order)] + [" ".join(str(v) for v in row) for row in grid]
    return "\n".join(lines) + "\n"


def parse_latin_square_text(text: str) -> LatinSquare:
    pls = parse_square_text(text)
    if not pls.is_complete():
        raise SquareFormatError(f"expected a complete Latin square, {pls.order ** 2 - len(pls)} cells empty")
    return LatinSquare.from_pls(pls)

