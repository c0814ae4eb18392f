import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_latin_squares, brute_pls_counts
from critset.census import (
    CensusTable,
    census_table,
    count_latin_squares,
    count_pls_by_size,
    count_pls_of_shape,
    enumerate_shapes,
    estimate_leaves,
)
from critset.errors import BudgetExceeded
from critset.model import Shape


def test_brute_force_oracle_n2():
    assert brute_pls_counts(2) == (1, 8, 16, 8, 2)


def test_count_by_size_examples():
    assert [count_pls_by_size(2, k) for k in (0, 1, 2, 4)] == [1, 8, 16, 2]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_count_by_size_matches_brute_force(n):
    assert census_table(n).counts == brute_pls_counts(n)


def test_census_n3_frozen():
    # computed once by the brute-force oracle over all 4^9 fillings
    assert census_table(3).counts == (1, 27, 270, 1278, 3078, 3834, 2412, 756, 108, 12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_count_by_size_end_values(n):
    assert count_pls_by_size(n, 0) == 1
    assert count_pls_by_size(n, 1) == n ** 3
    assert count_pls_by_size(n, n * n) == len(all_latin_squares(n))


def test_count_n4_near_full():
    # removing one cell from a Latin square loses nothing: the hole is forced
    assert count_pls_by_size(4, 15) == 16 * 576


def test_count_of_shape_examples():
    assert count_pls_of_shape(Shape.from_cells(2, [(1, 1), (1, 2), (2, 1), (2, 2)])) == 2
    assert count_pls_of_shape(Shape.from_cells(3, [(2, 3)])) == 3
    assert count_pls_of_shape(Shape.from_cells(3, [])) == 1


def test_enumerate_shapes_examples():
    assert len(list(enumerate_shapes(2, 4))) == 1
    assert len(list(enumerate_shapes(2, 1))) == 4
    shapes = list(enumerate_shapes(2, 2))
    assert len(shapes) == 6
    assert [s.cells for s in shapes] == sorted(s.cells for s in shapes)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_shape_sum_matches_direct(n):
    for k in range(n * n + 1):
        assert sum(count_pls_of_shape(s) for s in enumerate_shapes(n, k)) == count_pls_by_size(n, k)


def test_count_latin_squares_examples():
    assert [count_latin_squares(n) for n in (1, 2, 3, 4)] == [1, 2, 12, 576]


@pytest.mark.slow
def test_count_latin_squares_n5():
    assert count_latin_squares(5) == 161280


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_shape_count_invariant_under_transpose(data):
    n = 3
    cells = data.draw(st.sets(st.tuples(st.integers(1, n), st.integers(1, n))))
    s = Shape.from_cells(n, cells)
    t = Shape.from_cells(n, [(c, r) for r, c in cells])
    assert count_pls_of_shape(s) == count_pls_of_shape(t)


def test_count_of_shape_row_and_column_permutation_invariant():
    s = Shape.from_cells(3, [(1, 1), (1, 2), (2, 2), (3, 3)])
    perm = {1: 3, 2: 1, 3: 2}
    t = Shape.from_cells(3, [(perm[r], c) for r, c in s.cells])
    u = Shape.from_cells(3, [(r, perm[c]) for r, c in s.cells])
    assert count_pls_of_shape(s) == count_pls_of_shape(t) == count_pls_of_shape(u)


def test_estimate_is_upper_bound():
    for n in (2, 3):
        for k in range(n * n + 1):
            assert estimate_leaves(n, k) >= count_pls_by_size(n, k)
    assert sum(estimate_leaves(3, k) for k in range(10)) == 34 ** 3  # partial rows of length 3


def test_budget_guards():
    with pytest.raises(BudgetExceeded):
        count_pls_by_size(5, 12)
    with pytest.raises(BudgetExceeded):
        count_pls_by_size(3, 5, budget=100)
    with pytest.raises(BudgetExceeded):
        count_latin_squares(6)
    with pytest.raises(BudgetExceeded):
        list(enumerate_shapes(5, 12, budget=10**6))
    with pytest.raises(BudgetExceeded):
        count_pls_of_shape(Shape.from_cells(3, [(1, 1), (1, 2)]), budget=2)


def test_csv_roundtrip():
    t = census_table(2)
    assert t.to_csv() == "k,count\n0,1\n1,8\n2,16\n3,8\n4,2\n"
    assert CensusTable.from_csv(2, t.to_csv()) == t
    with pytest.raises(ValueError):
        CensusTable.from_csv(3, t.to_csv())


def test_census_n1():
    assert census_table(1).counts == (1, 1)
    assert math.comb(4, 2) == 6
