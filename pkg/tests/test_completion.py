import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_latin_squares, brute_completions, pls_strategy, sub_of_square
from critset.census import count_latin_squares
from critset.completion import (
    CompletionCount,
    candidates,
    classify,
    count_completions,
    forced_symbol,
    forcing_closure,
    is_critical_set,
    is_uniquely_completable,
)
from critset.model import LatinSquare, PartialLatinSquare, is_contained_in

P = PartialLatinSquare.from_entries
SQ2 = LatinSquare.from_rows([[1, 2], [2, 1]])


def test_candidates_examples():
    assert candidates(P(2, [(1, 1, 1)]), (1, 2)) == {2}
    assert candidates(PartialLatinSquare.empty(3), (2, 2)) == {1, 2, 3}
    assert candidates(P(2, [(1, 2, 2), (2, 1, 2)]), (2, 2)) == {1}


def test_candidates_filled_cell_is_error():
    with pytest.raises(ValueError):
        candidates(P(2, [(1, 1, 1)]), (1, 1))
    with pytest.raises(ValueError):
        forced_symbol(P(2, [(1, 1, 1)]), (1, 1))


def test_forced_symbol_examples():
    assert forced_symbol(P(2, [(1, 1, 1)]), (1, 2)) == 2
    assert forced_symbol(PartialLatinSquare.empty(2), (1, 1)) is None
    assert forced_symbol(PartialLatinSquare.empty(1), (1, 1)) == 1


def test_forced_symbol_is_naked_single_only():
    # symbol 1 can only go in (2,3) within row 2 (a hidden single) but that
    # cell still has candidates {1, 3}, so it is not forced.
    p = P(3, [(1, 1, 1), (3, 2, 1)])
    assert candidates(p, (2, 3)) == {1, 2, 3}
    assert forced_symbol(p, (2, 3)) is None


def test_closure_examples():
    c = forcing_closure(P(2, [(1, 1, 1)]))
    assert not c.contradictory and c.pls == SQ2.to_pls()
    c = forcing_closure(PartialLatinSquare.empty(3))
    assert not c.contradictory and len(c.pls) == 0


def test_closure_diagonal_pair_completes():
    # {(1,1;1),(2,2;1)} lies inside [[1,2],[2,1]]; forcing fills it in.
    c = forcing_closure(P(2, [(1, 1, 1), (2, 2, 1)]))
    assert not c.contradictory and c.pls == SQ2.to_pls()


def test_closure_flags_contradiction():
    c = forcing_closure(P(2, [(1, 1, 1), (2, 2, 2)]))
    assert c.contradictory


def test_count_examples():
    assert count_completions(PartialLatinSquare.empty(2), 10) == CompletionCount(2, False)
    assert count_completions(P(2, [(1, 1, 1)]), 10) == CompletionCount(1, False)
    assert count_completions(PartialLatinSquare.empty(3), 100) == CompletionCount(12, False)
    assert count_completions(P(2, [(1, 1, 1), (2, 2, 1)]), 10).count == 1
    assert count_completions(P(2, [(1, 1, 1), (2, 2, 2)]), 10).count == 0


def test_count_cap():
    assert count_completions(PartialLatinSquare.empty(3), 5) == CompletionCount(5, True)
    with pytest.raises(ValueError):
        count_completions(PartialLatinSquare.empty(3), 0)


def test_is_uniquely_completable_examples():
    assert is_uniquely_completable(P(2, [(1, 1, 1)])) == SQ2
    assert is_uniquely_completable(PartialLatinSquare.empty(2)) is None
    assert is_uniquely_completable(P(2, [(1, 1, 1), (2, 2, 2)])) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_empty_count_matches_census_and_brute_force(n):
    exact = count_latin_squares(n)
    assert exact == len(all_latin_squares(n))
    assert count_completions(PartialLatinSquare.empty(n), 10**6).count == exact


@settings(max_examples=150, deadline=None)
@given(pls_strategy(max_order=4))
def test_count_matches_brute_force(pls):
    assert count_completions(pls, 10**6).count == brute_completions(pls)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(sub_of_square))
def test_unique_completion_contains_input(case):
    sq, sub = case
    got = is_uniquely_completable(sub)
    if got is not None:
        assert got == sq and is_contained_in(sub, got)
    assert (got is not None) == (brute_completions(sub) == 1)


@given(pls_strategy(max_order=5), st.data())
def test_candidates_anti_monotone(pls, data):
    if len(pls) == 0:
        return
    n = pls.order
    drop = data.draw(st.sampled_from(pls.entries))
    smaller = pls.without_entry(drop)
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            if not pls.is_filled(r, c):
                assert candidates(pls, (r, c)) <= candidates(smaller, (r, c))


@given(pls_strategy(max_order=5))
def test_closure_idempotent_and_extensive(pls):
    c = forcing_closure(pls)
    assert set(pls.entries) <= set(c.pls.entries)
    if not c.contradictory:
        again = forcing_closure(c.pls)
        assert again.pls == c.pls and not again.contradictory


@settings(max_examples=100, deadline=None)
@given(pls_strategy(max_order=4))
def test_closure_preserves_count(pls):
    c = forcing_closure(pls)
    if c.contradictory:
        assert count_completions(pls, 10**6).count == 0
    else:
        assert count_completions(pls, 10**6) == count_completions(c.pls, 10**6)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(sub_of_square), st.data())
def test_closure_monotone(case, data):
    sq, sub = case
    extra = [e for e in sq.entries() if e not in sub.entries]
    more = data.draw(st.lists(st.sampled_from(extra), unique=True)) if extra else []
    bigger = PartialLatinSquare.from_entries(sq.order, list(sub.entries) + more)
    assert set(forcing_closure(sub).pls.entries) <= set(forcing_closure(bigger).pls.entries)


def test_classify_examples():
    assert classify(P(2, [(1, 1, 1)]))[0] == "critical"
    assert classify(SQ2.to_pls())[0] == "uniquely-completable-not-minimal"
    assert classify(PartialLatinSquare.empty(2))[0] == "not-uniquely-completable"
    assert classify(P(2, [(1, 1, 1), (2, 2, 2)]))[0] == "non-completable"
    assert is_critical_set(P(2, [(1, 1, 1)]))
    assert not is_critical_set(SQ2.to_pls())
