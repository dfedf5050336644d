import json

import pytest

from slnhom.diagram import parse_braid
from slnhom.homology import equal_bigraded
from slnhom.laurent import LaurentPolynomial
from slnhom.statesum import braid_bracket
from slnhom.verify import (
    EULER_CONVENTION,
    FAIL,
    OPEN,
    PASS,
    CheckResult,
    analyze,
    check_d_squared,
    check_duality,
    check_euler,
    check_markov,
    check_moy,
    moy_fixtures,
    pin_euler_convention,
    run_suite,
    summarize,
)
from oracles import quantum_integer

B = parse_braid

# pairs whose cube has a non-commuting face under every reading of the
# distinguished-circle side conditions, so no homology is available
BLOCKED = pytest.mark.xfail(
    strict=True, reason="non-commuting face traced to the distinguished-circle rules"
)


# -- d^2 ---------------------------------------------------------------------------


def test_d2_unknot_trivial():
    r = check_d_squared(B("B1:"), 2)
    assert r.status == PASS and r.extra["faces"] == 0


def test_d2_single_crossing():
    assert check_d_squared(B("B2: 1"), 2).status == PASS


def test_d2_trefoil_all_faces():
    r = check_d_squared(B("B2: 1 1 1"), 2)
    assert r.status == PASS
    # a 3-cube has 6 square faces (and 12 edges)
    assert r.extra["faces"] == 6


def test_d2_open_face_has_witness():
    r = check_d_squared(B("B3: 1 2"), 2)
    assert r.status == OPEN
    first = r.witness["first"]
    assert {"cr", "a", "b", "basis", "via_a", "via_b"} <= set(first)
    assert first["via_a"] != first["via_b"]


# -- Euler characteristic ------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_euler_unknots(n):
    for w in ("B1:", "B2: 1"):
        r = check_euler(B(w), n)
        assert r.status == PASS and r.extra["matches_signed"] and r.extra["matches_literal"]
    assert braid_bracket(B("B1:"), n) == quantum_integer(n)


def test_euler_negative_crossing_needs_sign():
    r = check_euler(B("B2: -1"), 2)
    assert r.status == PASS
    assert r.extra["matches_signed"] and not r.extra["matches_literal"]


def test_euler_convention_pinned():
    results = [check_euler(B(w), 2) for w in ("B1:", "B2: 1", "B2: -1", "B2: 1 1 1", "B2: -1 -1")]
    assert pin_euler_convention(results) == [EULER_CONVENTION]


def test_euler_suite_summary_record():
    results = run_suite("euler", 2, max_crossings=2, max_strands=2)
    last = results[-1]
    assert last.check == "euler-convention" and last.status == PASS
    assert last.witness["pinned"] == "signed"
    assert not any(r.status == FAIL for r in results)


# -- MOY -------------------------------------------------------------------------------


def test_moy_fixtures_cover_three_relations():
    rels = {fx["relation"] for fx in moy_fixtures()}
    assert rels == {"loop", "digon", "square"}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_moy_identities(n):
    results = check_moy(n)
    assert results and all(r.status == PASS for r in results), [
        r.to_json() for r in results if r.status != PASS
    ]


# -- Markov ------------------------------------------------------------------------------


def _same_homology(w1, w2, n=2):
    h1, h2 = analyze(B(w1), n).homology, analyze(B(w2), n).homology
    assert h1 is not None and h2 is not None
    return equal_bigraded(h1, h2)[0]


def test_markov_stabilization():
    assert _same_homology("B1:", "B2: 1")


@BLOCKED
def test_markov_conjugation():
    assert _same_homology("B2: 1", "B2: -1 1 1")


@BLOCKED
def test_markov_braid_relation():
    assert _same_homology("B3: 1 2 1", "B3: 2 1 2")


def test_markov_report_has_no_fail():
    rs = check_markov(B("B1:"), 2)
    assert [r.status for r in rs] == [PASS, PASS]
    rs = check_markov(B("B2: 1"), 2)
    assert not any(r.status == FAIL for r in rs)
    assert all(r.extra.get("reason") for r in rs if r.status == OPEN)


# -- duality -------------------------------------------------------------------------------


def test_duality_unknot_self_dual():
    H = analyze(B("B1:"), 2).homology
    table = H.rank_table()
    assert {(-i, -j): r for (i, j), r in table.items()} == table
    assert all(r.status == PASS for r in check_duality(B("B1:"), 2))


def test_duality_trefoil_mirror():
    H = analyze(B("B2: 1 1 1"), 2).homology.rank_table()
    Hm = analyze(B("B2: -1 -1 -1"), 2).homology.rank_table()
    assert Hm == {(-i, -j): r for (i, j), r in H.items()}
    assert all(r.status == PASS for r in check_duality(B("B2: 1 1 1"), 2))


@BLOCKED
def test_duality_reverse_two_signs():
    assert all(r.status == PASS for r in check_duality(B("B3: 1 -2"), 2))


# -- reports -----------------------------------------------------------------------------


def test_report_json_shape():
    r = check_d_squared(B("B2: 1"), 2)
    obj = json.loads(r.to_json())
    assert {"check", "input", "n", "status"} <= set(obj)
    assert obj["input"] == "B2: 1"


def test_suite_order_independent_of_workers():
    one = [r.to_json() for r in run_suite("d2", 2, 2, 2, workers=1)]
    two = [r.to_json() for r in run_suite("d2", 2, 2, 2, workers=2)]
    assert one == two


def test_summarize_counts():
    rs = [CheckResult("d2", "x", 2, PASS), CheckResult("d2", "y", 2, OPEN)]
    assert summarize(rs) == {"d2": {PASS: 1, FAIL: 0, OPEN: 1}}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 2)


def test_bracket_matches_laurent_api():
    assert isinstance(braid_bracket(B("B2: 1"), 2), LaurentPolynomial)
