import pytest
from hypothesis import given, strategies as st

from slnhom.diagram import (
    BraidParseError,
    BraidWord,
    closure,
    conjugates,
    enumerate_braids,
    format_braid,
    markov_variants,
    parse_braid,
    rotations,
    stabilizations,
)


@st.composite
def braids(draw, max_strands=4, max_len=6):
    s = draw(st.integers(1, max_strands))
    if s == 1:
        return BraidWord(1, ())
    gens = [g for k in range(1, s) for g in (k, -k)]
    return BraidWord(s, tuple(draw(st.lists(st.sampled_from(gens), max_size=max_len))))


def test_parse_examples():
    assert parse_braid("B2: 1 1 1") == BraidWord(2, (1, 1, 1))
    assert parse_braid("B1:") == BraidWord(1, ())
    assert parse_braid("B3: 1 -2") == BraidWord(3, (1, -2))


@pytest.mark.parametrize("text,token", [("B2: 2", "2"), ("B3: 1 x", "x"), ("B2: 0", "0")])
def test_parse_errors_name_the_token(text, token):
    with pytest.raises(BraidParseError, match=repr(token)):
        parse_braid(text)


@pytest.mark.parametrize("text", ["", "2: 1", "B0:", "Bx: 1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(BraidParseError):
        parse_braid(text)


def test_closure_examples():
    D = closure(parse_braid("B2: 1 1 1"))
    assert len(D.crossings) == 3 and D.writhe == 3 and D.negative == ()
    assert closure(parse_braid("B1:")).writhe == 0
    D = closure(parse_braid("B2: 1 -1"))
    assert len(D.crossings) == 2 and D.writhe == 0
    assert [c.id for c in D.crossings] == [0, 1]
    assert D.crossings[1].columns == (1, 2) and D.crossings[1].height == 1


def test_markov_variant_examples():
    assert BraidWord(2, (1,)) in markov_variants(BraidWord(1, ()))
    assert BraidWord(2, (-1,)) in markov_variants(BraidWord(1, ()))
    assert BraidWord(2, (1, 1, 1)) in markov_variants(BraidWord(2, (1, 1, 1)))
    assert BraidWord(2, (-1, 1, 1)) in markov_variants(BraidWord(2, (1,)))


def test_braid_relation_variant():
    assert BraidWord(3, (2, 1, 2)) in markov_variants(BraidWord(3, (1, 2, 1)))
    assert BraidWord(4, (3, 1)) in markov_variants(BraidWord(4, (1, 3)))


def test_enumerate_counts():
    words = list(enumerate_braids(2, 3))
    # B1, then on 2 strands 1 + 2 + 4, on 3 strands 1 + 4 + 16
    assert len(words) == 1 + 7 + 21
    assert len(set(words)) == len(words)


@given(braids())
def test_printer_round_trip(b):
    assert parse_braid(format_braid(b)) == b


@given(braids())
def test_writhe_under_variants(b):
    w = closure(b).writhe
    for v in rotations(b) + conjugates(b):
        assert closure(v).writhe == w
    plus, minus = stabilizations(b)
    assert closure(plus).writhe == w + 1
    assert closure(minus).writhe == w - 1


@given(braids())
def test_variants_are_deduplicated_and_deterministic(b):
    vs = markov_variants(b)
    assert len(vs) == len(set(vs))
    assert vs == markov_variants(b)


@given(braids())
def test_word_operations(b):
    assert b.inverse().inverse() == b
    assert b.mirror().mirror() == b
    assert b.reverse().reverse() == b
    assert closure(b.mirror()).writhe == -closure(b).writhe
