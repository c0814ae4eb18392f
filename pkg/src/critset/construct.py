"""Randomized construction of uniquely completable sets and critical sets.

Every entry of a Latin square gets an independent uniform birth time; in
birth order an entry is kept unless the entries born before it already
force it.  Uniform i.i.d. birth times induce a uniformly random ordering,
so the ordering is sampled directly as a permutation.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence``.  Trial
``i`` of a run with seed ``s`` draws from ``SeedSequence(s, spawn_key=(i,))``,
the same stream ``SeedSequence(s).spawn(...)[i]`` would give, so results do
not depend on how trials are spread over workers.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from critset.completion import count_completions, forced_symbol, is_uniquely_completable
from critset.errors import BudgetExceeded, NotUniquelyCompletable
from critset.model import MAX_ORDER, Entry, LatinSquare, PartialLatinSquare


def trial_rng(seed: int, index: Optional[int] = None) -> np.random.Generator:
    if index is None:
        return np.random.default_rng(np.random.SeedSequence(seed))
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def cyclic_latin_square(n: int) -> LatinSquare:
    return LatinSquare.from_rows([[(i + j) % n + 1 for j in range(n)] for i in range(n)])


def random_latin_square(n: int, seed: int = 0) -> LatinSquare:
    """A random Latin square of order ``n``, deterministic in ``seed``.

    Rows are added one at a time; each new row is a perfect matching between
    columns and the symbols still missing from those columns, found with
    augmenting paths over shuffled candidate lists.  A Latin rectangle always
    extends by one row (Hall's theorem), so the search never dead-ends.

    This does not sample uniformly from all Latin squares of order ``n``.
    """
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {n}")
    rng = trial_rng(seed)
    col_free = [set(range(1, n + 1)) for _ in range(n)]
    rows = []
    for _ in range(n):
        opts = []
        for c in range(n):
            syms = sorted(col_free[c])
            rng.shuffle(syms)
            opts.append(syms)
        owner: dict[int, int] = {}  # symbol -> column

        def augment(c, seen):
            for k in opts[c]:
                if k in seen:
                    continue
                seen.add(k)
                if k not in owner or augment(owner[k], seen):
                    owner[k] = c
                    return True
            return False

        for c in rng.permutation(n):
            if not augment(int(c), set()):
                raise AssertionError("Latin rectangle failed to extend")
        row = [0] * n
        for k, c in owner.items():
            row[c] = k
            col_free[c].discard(k)
        rows.append(row)
    return LatinSquare.from_rows(rows)


@dataclass(frozen=True)
class BirthOrder:
    """Entries of a Latin square listed by increasing birth time."""

    order: int
    perm: tuple[Entry, ...]


def random_birth_order(square: LatinSquare, seed: int = 0, *, rng: Optional[np.random.Generator] = None) -> BirthOrder:
    if rng is None:
        rng = trial_rng(seed)
    entries = square.entries()
    idx = rng.permutation(len(entries))
    return BirthOrder(square.order, tuple(entries[i] for i in idx))


def birth_time_construct(
    square: LatinSquare, order: BirthOrder, *, accumulated: bool = False
) -> PartialLatinSquare:
    """Keep each entry that its predecessors in ``order`` do not force.

    The forcing test looks at the whole prefix of earlier-born entries.  With
    ``accumulated=True`` it looks only at the entries kept so far, which is a
    different (still uniquely completable) construction kept for comparison.
    """
    n = square.order
    if order.order != n or len(order.perm) != n * n:
        raise ValueError("birth order does not match the square")
    full = (1 << n) - 1
    rows = [0] * n
    cols = [0] * n
    kept = []
    for e in order.perm:
        r, c, k = e
        if square.grid[r - 1][c - 1] != k:
            raise ValueError(f"{e} is not an entry of the square")
        bit = 1 << (k - 1)
        forced = full & ~(rows[r - 1] | cols[c - 1]) == bit
        if not forced:
            kept.append(e)
        if accumulated and forced:
            continue
        rows[r - 1] |= bit
        cols[c - 1] |= bit
    return PartialLatinSquare.from_entries(n, kept)


def replay_certifies(square: LatinSquare, order: BirthOrder, kept: PartialLatinSquare) -> bool:
    """Replay ``order``: kept entries go in verbatim, every other entry must be forced.

    A True result certifies that ``kept`` completes uniquely to ``square``
    without any search.
    """
    state = PartialLatinSquare.empty(square.order)
    for e in order.perm:
        if e not in kept.entries and forced_symbol(state, (e.row, e.col)) != e.symbol:
            return False
        state = state.with_entry(e)
    return True


@dataclass(frozen=True)
class TrialStats:
    trials: int
    sizes: tuple[int, ...]
    mean: float
    sd: float
    se: float
    min: int
    max: int

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "TrialStats":
        sizes = tuple(sizes)
        if not sizes:
            raise ValueError("need at least one trial")
        mean = statistics.fmean(sizes)
        sd = statistics.stdev(sizes) if len(sizes) > 1 else 0.0
        return cls(len(sizes), sizes, mean, sd, sd / math.sqrt(len(sizes)), min(sizes), max(sizes))

    def z_score(self, expected: float) -> float:
        diff = self.mean - expected
        if self.se == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.se


def _trial_sizes(args):
    square, seed, lo, hi = args
    out = []
    for i in range(lo, hi):
        order = random_birth_order(square, rng=trial_rng(seed, i))
        out.append(len(birth_time_construct(square, order)))
    return out


def sample_uc_sizes(square: LatinSquare, trials: int, seed: int = 0, workers: int = 1) -> TrialStats:
    """Sizes of the constructed sets over ``trials`` independent birth orders."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers <= 1:
        return TrialStats.from_sizes(_trial_sizes((square, seed, 0, trials)))
    step = -(-trials // workers)
    chunks = [(square, seed, lo, min(lo + step, trials)) for lo in range(0, trials, step)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_trial_sizes, chunks))
    return TrialStats.from_sizes([s for part in parts for s in part])


def latest_born_first(order: BirthOrder, ucset: PartialLatinSquare) -> list[Entry]:
    kept = set(ucset.entries)
    return [e for e in reversed(order.perm) if e in kept]


def shuffled_removal_order(ucset: PartialLatinSquare, seed: int = 0) -> list[Entry]:
    entries = list(ucset.entries)
    idx = trial_rng(seed).permutation(len(entries))
    return [entries[i] for i in idx]


def minimize_to_critical(
    ucset: PartialLatinSquare,
    square: LatinSquare,
    removal_order: Optional[Sequence[Entry]] = None,
) -> PartialLatinSquare:
    """Drop entries of a uniquely completable set while it stays uniquely completable.

    One pass suffices: a subset of a set with two completions also has two
    completions, so an entry that could not be dropped earlier never can
    be later.  The default order is reverse row-major; pass
    :func:`latest_born_first` for the birth-time pipeline.
    """
    if is_uniquely_completable(ucset) != square:
        raise NotUniquelyCompletable("input does not complete uniquely to the given square")
    if removal_order is None:
        removal_order = list(reversed(ucset.entries))
    current = ucset
    for e in removal_order:
        if e not in current.entries:
            continue
        trial = current.without_entry(e)
        if count_completions(trial, 2).count == 1:
            current = trial
    return current


def scs_exhaustive(square: LatinSquare, size_limit: Optional[int] = None) -> PartialLatinSquare:
    """A smallest critical set of ``square`` by sweeping subsets by size."""
    n = square.order
    if n > 4:
        raise BudgetExceeded(f"exhaustive search is limited to order <= 4, got {n}")
    limit = n * n if size_limit is None else min(size_limit, n * n)
    entries = square.entries()
    for k in range(limit + 1):
        for subset in combinations(entries, k):
            pls = PartialLatinSquare.from_entries(n, subset)
            if count_completions(pls, 2).count == 1:
                return pls
    raise BudgetExceeded(f"no uniquely completable subset of size <= {limit}")
