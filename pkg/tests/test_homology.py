import random

import pytest
from hypothesis import given, settings, strategies as st

from slnhom.cube import ChainComplex
from slnhom.diagram import parse_braid
from slnhom.homology import (
    BigradedHomology,
    DSquaredError,
    chain_euler,
    equal_bigraded,
    graded_euler,
    homology_of,
    rational_ranks,
)
from slnhom.laurent import LaurentPolynomial as L
from slnhom.link import link_complex, link_homology
from slnhom.diagram import closure
from slnhom.statesum import braid_bracket

TREFOIL_2 = (
    '{"0,-1":{"rank":1,"torsion":[]},"0,-3":{"rank":1,"torsion":[]},'
    '"2,-5":{"rank":1,"torsion":[]},"3,-7":{"rank":0,"torsion":[2]},'
    '"3,-9":{"rank":1,"torsion":[]}}'
)


def test_zero_differential():
    C = ChainComplex({0: [1, 1, 3]}, {})
    H = homology_of(C)
    assert H.groups == {(0, 1): (2, ()), (0, 3): (1, ())}


def test_identity_is_acyclic():
    C = ChainComplex({0: [0, 2], 1: [0, 2]}, {0: [{0: 1}, {1: 1}]})
    assert homology_of(C).groups == {}
    assert graded_euler(homology_of(C)) == 0


def test_torsion_from_multiplication_by_two():
    C = ChainComplex({0: [5], 1: [5]}, {0: [{0: 2}]})
    assert homology_of(C).groups == {(1, 5): (0, (2,))}


def test_d_squared_violation_raises():
    C = ChainComplex({0: [0], 1: [0], 2: [0]}, {0: [{0: 1}], 1: [{0: 1}]})
    with pytest.raises(DSquaredError) as exc:
        homology_of(C)
    assert (exc.value.degree, exc.value.index) == (0, 0)


def test_grading_must_be_preserved():
    C = ChainComplex({0: [0], 1: [2]}, {0: [{0: 1}]})
    with pytest.raises(ValueError):
        homology_of(C)


@pytest.mark.parametrize("n", [2, 3])
def test_unknot(n):
    H = link_homology(parse_braid("B1:"), n)
    assert H.groups == {(0, 2 * a - n - 1): (1, ()) for a in range(1, n + 1)}
    assert graded_euler(H) == L({2 * a - n - 1: 1 for a in range(1, n + 1)})


def test_trefoil_frozen():
    H = link_homology(parse_braid("B2: 1 1 1"), 2)
    assert H.to_json() == TREFOIL_2
    assert graded_euler(H) == braid_bracket(parse_braid("B2: 1 1 1"), 2)


def test_json_round_trip():
    H = BigradedHomology.from_json(TREFOIL_2)
    assert H.to_json() == TREFOIL_2
    assert BigradedHomology.from_json(H.to_json_obj()) == H
    assert H.torsion(3, -7) == (2,) and H.rank(3, -7) == 0 and H.rank(9, 9) == 0


def test_equal_bigraded_reports():
    H = BigradedHomology.from_json(TREFOIL_2)
    assert equal_bigraded(H, H) == (True, [])
    other = BigradedHomology({**H.groups, (0, -1): (2, ())})
    ok, diffs = equal_bigraded(H, other)
    assert not ok and [d["bidegree"] for d in diffs] == [(0, -1)]
    no_torsion = BigradedHomology({**H.groups, (3, -7): (0, ())})
    ok, diffs = equal_bigraded(H, no_torsion)
    assert not ok and diffs[0]["bidegree"] == (3, -7)
    assert rational_ranks(H) == {k: r for k, (r, _) in H.groups.items() if r}


def test_empty_entries_dropped():
    H = BigradedHomology({(0, 0): (0, ()), (1, 1): (0, (1,))})
    assert H.groups == {}


def _elementary_change(C, rng, steps=20):
    """Random unimodular base changes inside one (degree, quantum degree) block."""
    d = {i: [dict(col) for col in m] for i, m in C.d.items()}
    for _ in range(steps):
        i = rng.choice(sorted(C.gradings))
        g = C.gradings[i]
        u, v = rng.randrange(len(g)), rng.randrange(len(g))
        if u == v or g[u] != g[v]:
            continue
        k = rng.choice([-2, -1, 1, 2])
        # new basis e_v' = e_v + k e_u: column v of d^i gains k * column u,
        # row u of d^(i-1) loses k * row v
        if i in d:
            cols = d[i]
            for r, x in cols[u].items():
                cols[v][r] = cols[v].get(r, 0) + k * x
            cols[v] = {r: x for r, x in cols[v].items() if x}
        if i - 1 in d:
            for col in d[i - 1]:
                if v in col:
                    col[u] = col.get(u, 0) - k * col[v]
                    if not col[u]:
                        del col[u]
    return ChainComplex(C.gradings, d)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["B2: 1 1 1", "B2: 1 1", "B2: -1 -1 -1 -1", "B2: 1 1 1 1"]))
def test_invariant_under_basis_change(seed, text):
    b = parse_braid(text)
    C = link_complex(closure(b), 2)
    H = homology_of(C)
    C2 = _elementary_change(C, random.Random(seed))
    assert homology_of(C2) == H


@pytest.mark.parametrize("text", ["B1:", "B2: 1", "B2: 1 1 1", "B2: -1 -1", "B2: 1 1 1 1 1"])
@pytest.mark.parametrize("n", [2, 3])
def test_euler_consistency(text, n):
    C = link_complex(closure(parse_braid(text)), n)
    assert graded_euler(homology_of(C)) == chain_euler(C)
