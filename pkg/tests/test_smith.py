import random

from hypothesis import given, settings, strategies as st

from oracles import bareiss_det, determinantal_factors, rational_rank
from slnhom.smith import invariant_factors, rank, smith_normal_form


def test_examples():
    assert smith_normal_form([[2]]) == ([2], 1)
    assert smith_normal_form([[1, 0], [0, 0]]) == ([1], 1)
    assert smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)
    assert smith_normal_form([]) == ([], 0)
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)


def test_sparse_columns_and_rank():
    cols = [{0: 2}, {1: 3}, {0: 2, 1: 3}]
    assert invariant_factors(cols) == [1, 6]
    assert rank(cols) == 2


def test_oracle_self_check():
    assert bareiss_det([[2, 4], [6, 8]]) == -8
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert determinantal_factors([[2, 4], [6, 8]]) == [2, 4]


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_matches_determinantal_divisors(rows):
    f, r = smith_normal_form(rows)
    assert f == determinantal_factors(rows)
    assert r == rational_rank(rows)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_invariant_under_unimodular_changes(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    rows = [[rng.choice([0, 0, 2, -4, 6, 3]) for _ in range(n)] for _ in range(m)]
    base = smith_normal_form(rows)
    for _ in range(10):
        i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
        if i != j:
            k = rng.randint(-3, 3)
            rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
        c1, c2 = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if c1 != c2:
            for r in rows:
                r[c1], r[c2] = r[c2], -r[c1]
    assert smith_normal_form(rows) == base
