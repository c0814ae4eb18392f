"""Forcing, completion counting and unique completability.

Forcing is the naked-single rule only: an empty cell is forced to ``k``
when every other symbol already appears in its row or column.  Counting
completions is a full backtracking search (fewest-candidates cell first,
ties row-major, symbols ascending) with a forcing closure at every node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from critset.model import Entry, LatinSquare, PartialLatinSquare, full_mask


@dataclass(frozen=True)
class CompletionCount:
    count: int
    capped: bool


@dataclass(frozen=True)
class Closure:
    """Result of :func:`forcing_closure`.

    ``contradictory`` is set when some empty cell ran out of candidates;
    ``pls`` then holds the state reached when the closure stopped.
    """

    pls: PartialLatinSquare
    contradictory: bool


def _check_empty(pls, cell):
    r, c = cell
    if not (1 <= r <= pls.order and 1 <= c <= pls.order):
        raise ValueError(f"cell ({r},{c}) outside order {pls.order}")
    if pls.is_filled(r, c):
        raise ValueError(f"cell ({r},{c}) is already filled")


def candidate_mask(pls: PartialLatinSquare, cell: tuple[int, int]) -> int:
    _check_empty(pls, cell)
    r, c = cell
    return full_mask(pls.order) & ~(pls.row_used[r - 1] | pls.col_used[c - 1])


def _symbols(mask):
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def candidates(pls: PartialLatinSquare, cell: tuple[int, int]) -> frozenset[int]:
    """Symbols that can be placed at the empty ``cell`` without a conflict."""
    return frozenset(_symbols(candidate_mask(pls, cell)))


def forced_symbol(pls: PartialLatinSquare, cell: tuple[int, int]) -> Optional[int]:
    m = candidate_mask(pls, cell)
    if m and not m & (m - 1):
        return m.bit_length()
    return None


# -- mutable search state ---------------------------------------------------
# grid is a flat row-major list (0 = empty); rows/cols are symbol masks.


def _state(pls):
    n = pls.order
    grid = [0] * (n * n)
    for r, c, k in pls.entries:
        grid[(r - 1) * n + c - 1] = k
    return grid, list(pls.row_used), list(pls.col_used)


def _close(n, grid, rows, cols):
    """Fill naked singles until none remain.  False on a dead cell."""
    full = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for idx in range(n * n):
            if grid[idx]:
                continue
            r, c = divmod(idx, n)
            cand = full & ~(rows[r] | cols[c])
            if not cand:
                return False
            if not cand & (cand - 1):
                grid[idx] = cand.bit_length()
                rows[r] |= cand
                cols[c] |= cand
                changed = True
    return True


def _pls_from_state(n, grid):
    return PartialLatinSquare.from_entries(
        n, (Entry(idx // n + 1, idx % n + 1, k) for idx, k in enumerate(grid) if k)
    )


def forcing_closure(pls: PartialLatinSquare) -> Closure:
    n = pls.order
    grid, rows, cols = _state(pls)
    ok = _close(n, grid, rows, cols)
    return Closure(_pls_from_state(n, grid), not ok)


def _count(n, grid, rows, cols, cap, first):
    if not _close(n, grid, rows, cols):
        return 0
    full = (1 << n) - 1
    best = -1
    best_cand = 0
    best_pop = n + 1
    for idx in range(n * n):
        if grid[idx]:
            continue
        r, c = divmod(idx, n)
        cand = full & ~(rows[r] | cols[c])
        pop = cand.bit_count()
        if pop < best_pop:
            best, best_cand, best_pop = idx, cand, pop
            if pop == 2:
                break
    if best < 0:
        if not first:
            first.append(tuple(grid))
        return 1

    r, c = divmod(best, n)
    total = 0
    cand = best_cand
    while cand:
        bit = cand & -cand
        cand ^= bit
        g = grid[:]
        rs = rows[:]
        cs = cols[:]
        g[best] = bit.bit_length()
        rs[r] |= bit
        cs[c] |= bit
        total += _count(n, g, rs, cs, cap - total, first)
        if total >= cap:
            break
    return total


def _count_with_witness(pls, cap):
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    n = pls.order
    grid, rows, cols = _state(pls)
    first: list = []
    total = _count(n, grid, rows, cols, cap, first)
    return CompletionCount(min(total, cap), total >= cap), first


def count_completions(pls: PartialLatinSquare, cap: int) -> CompletionCount:
    """Number of Latin squares containing ``pls``, stopping at ``cap``."""
    return _count_with_witness(pls, cap)[0]


def is_uniquely_completable(pls: PartialLatinSquare) -> Optional[LatinSquare]:
    """The unique completion of ``pls``, or None if it has zero or several."""
    result, first = _count_with_witness(pls, 2)
    if result.count != 1:
        return None
    n = pls.order
    flat = first[0]
    return LatinSquare.from_rows([flat[i * n:(i + 1) * n] for i in range(n)])


def is_critical_set(pls: PartialLatinSquare) -> bool:
    """Uniquely completable, and no single entry can be dropped."""
    if count_completions(pls, 2).count != 1:
        return False
    return all(count_completions(pls.without_entry(e), 2).count >= 2 for e in pls.entries)


def classify(pls: PartialLatinSquare) -> tuple[str, CompletionCount]:
    """Verdict used by ``critset check``.

    One of ``critical``, ``uniquely-completable-not-minimal``,
    ``not-uniquely-completable`` or ``non-completable``.
    """
    cc = count_completions(pls, 2)
    if cc.count == 0:
        return "non-completable", cc
    if cc.count >= 2:
        return "not-uniquely-completable", cc
    for e in pls.entries:
        if count_completions(pls.without_entry(e), 2).count == 1:
            return "uniquely-completable-not-minimal", cc
    return "critical", cc
