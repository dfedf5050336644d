import pytest
from hypothesis import given, settings

from slnhom.diagram import closure, parse_braid
from slnhom.resolution import all_resolutions, resolve, subsets_in_order
from test_diagram import braids


def test_unknot_resolution():
    G = resolve(closure(parse_braid("B1:")), ())
    assert len(G.normal_edges) == 1 and G.singular_edges == ()
    assert G.normal_edges[0].closure_arcs == 1


def test_positive_crossing_resolutions():
    D = closure(parse_braid("B2: 1"))
    G1 = resolve(D, {0})
    assert len(G1.singular_edges) == 1 and G1.parallel_pairs == ()
    E = G1.singular_edges[0]
    assert len(E.legs) == 2 and len(E.heads) == 2
    assert G1.counts == (0, 1, 0, 0)
    G0 = resolve(D, ())
    assert len(G0.parallel_pairs) == 1 and G0.singular_edges == ()
    assert G0.counts == (1, 0, 0, 0)


def test_negative_crossing_resolutions():
    D = closure(parse_braid("B2: -1"))
    assert len(resolve(D, ()).singular_edges) == 1
    assert len(resolve(D, {0}).parallel_pairs) == 1
    assert resolve(D, ()).counts == (0, 0, 1, 0)
    assert resolve(D, {0}).cohomological_degree == 0
    assert resolve(D, ()).cohomological_degree == -1


def test_unknown_crossing_rejected():
    with pytest.raises(ValueError):
        resolve(closure(parse_braid("B2: 1")), {3})


def test_all_resolutions_order():
    assert [cr for cr, _ in all_resolutions(closure(parse_braid("B1:")))] == [frozenset()]
    assert len(list(all_resolutions(closure(parse_braid("B2: 1 1 1"))))) == 8
    assert list(subsets_in_order(2)) == [frozenset(), {0}, {1}, {0, 1}]


def test_embedding_lists_segments():
    G = resolve(closure(parse_braid("B2: 1 1")), {0, 1})
    segs = [seg for e in G.normal_edges for seg in e.embedding]
    arcs = [seg for seg in segs if seg[0] == "arc"]
    assert sorted(arcs) == [("arc", 1), ("arc", 2)]


@settings(max_examples=60, deadline=None)
@given(braids(max_len=5))
def test_structural_invariants(b):
    D = closure(b)
    npos, nneg = len(D.positive), len(D.negative)
    for cr, G in all_resolutions(D):
        n0p, n1p, n0m, n1m = G.counts
        assert n0p + n1p == npos and n0m + n1m == nneg
        assert len(G.singular_edges) == n1p + n0m
        assert len(G.parallel_pairs) == n0p + n1m
        assert len(G.singular_edges) + len(G.parallel_pairs) == len(D.crossings)
        # every slot belongs to exactly one edge, every edge to one column
        slots = [s for e in G.normal_edges for s in e.slots]
        assert len(slots) == len(set(slots)) == b.strands * max(len(D.crossings), 1)
        assert all(len({c for c, _ in e.slots}) == 1 for e in G.normal_edges)
        # each edge is the leg of at most one vertex and the head of at most one
        legs = [x for E in G.singular_edges for x in E.legs]
        heads = [x for E in G.singular_edges for x in E.heads]
        assert len(legs) == len(set(legs)) and len(heads) == len(set(heads))
        assert set(legs) == set(heads)
        assert sum(e.closure_arcs for e in G.normal_edges) == b.strands
