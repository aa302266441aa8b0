from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quantcat import (
    INF,
    CapExceeded,
    DescriptorError,
    Quantale,
    check_assumptions,
    check_quantale_laws,
    totally_below,
)

FINITE_FIXTURES = [
    Quantale.boolean(),
    Quantale.godel(3),
    Quantale.godel(4),
    Quantale.lukasiewicz(3),
    Quantale.lukasiewicz(5),
]


def brute_hom(q, u, v):
    """Independent oracle: the join of every w with u (x) w <= v."""
    return q.join_all(w for w in q.elements if q.leq(q.tensor(u, w), v))


def test_boolean_hom_implication(q2):
    assert q2.hom("1", "0") == "0"
    assert q2.hom("0", "0") == "1"
    assert q2.hom("0", "1") == "1"
    assert q2.hom("1", "1") == "1"


def test_godel_hom_matches_brute_force(godel3):
    assert brute_hom(godel3, "1", "1/2") == "1/2"
    assert godel3.hom("1", "1/2") == "1/2"
    for u in godel3.elements:
        for v in godel3.elements:
            assert godel3.hom(u, v) == brute_hom(godel3, u, v)


def test_lawvere_hom_is_truncated_minus(lawvere):
    # adjunction brute-forced on a quarter-step rational grid
    grid = [Fraction(n, 4) for n in range(0, 33)] + [INF]
    u, v = Fraction(2), Fraction(5)
    best = lawvere.join_all(w for w in grid if lawvere.leq(lawvere.tensor(u, w), v))
    assert best == Fraction(3)
    assert lawvere.hom(u, v) == Fraction(3)
    assert lawvere.hom(Fraction(5), Fraction(2)) == Fraction(0)
    assert lawvere.hom(INF, Fraction(7)) == Fraction(0)
    assert lawvere.hom(Fraction(7), INF) is INF
    assert lawvere.hom(INF, INF) == Fraction(0)


@pytest.mark.parametrize("q", FINITE_FIXTURES, ids=lambda q: repr(q))
def test_adjunction_exhaustive(q):
    for u in q.elements:
        for v in q.elements:
            h = q.hom(u, v)
            for w in q.elements:
                assert q.leq(q.tensor(u, w), v) == q.leq(w, h)


@pytest.mark.parametrize("q", FINITE_FIXTURES, ids=lambda q: repr(q))
def test_hom_unit_top_and_monotonicity(q):
    for v in q.elements:
        assert q.hom(q.unit, v) == v
        assert q.hom(v, q.top) == q.top
    for u in q.elements:
        for u2 in q.elements:
            if not q.leq(u, u2):
                continue
            for v in q.elements:
                assert q.leq(q.hom(u2, v), q.hom(u, v))
                assert q.leq(q.hom(v, u), q.hom(v, u2))


rationals = st.fractions(min_value=0, max_value=50)


@settings(max_examples=200, derandomize=True)
@given(rationals, rationals, rationals)
def test_lawvere_adjunction_property(u, v, w):
    q = Quantale.lawvere()
    assert q.leq(q.tensor(u, w), v) == q.leq(w, q.hom(u, v))


@pytest.mark.parametrize("q", FINITE_FIXTURES, ids=lambda q: repr(q))
def test_builtin_laws_pass(q):
    assert check_quantale_laws(q).ok


def test_broken_tensor_reports_witness():
    # tamper the Godel tensor so (0 (x) 1) (x) 1/2 != 0 (x) (1 (x) 1/2)
    q = Quantale.godel(3)
    table = dict(q._tensor)
    table[("0", "1")] = "1"
    table[("1", "0")] = "1"
    broken = Quantale.finite(q.elements, [(u, v) for u in q.elements for v in q.elements
                                          if q.leq(u, v)], table, "1")
    rep = check_quantale_laws(broken)
    assert not rep.ok
    assoc = rep.entry("tensor-associative")
    assert not assoc.passed
    assert assoc.witness is not None and len(assoc.witness) == 3


def test_pentagon_lattice_fails_distributivity():
    # N5: bottom < a < c < top, bottom < b < top, b incomparable to a and c
    els = ["bot", "a", "b", "c", "top"]
    order = {("bot", e) for e in els} | {(e, "top") for e in els}
    order |= {(e, e) for e in els} | {("a", "c")}
    q = Quantale.finite(
        els, order,
        {(u, v): _n5_meet(u, v, order) for u in els for v in els},
        "top",
    )
    rep = check_quantale_laws(q)
    assert not rep.ok
    failed = {e.law for e in rep.failures()}
    assert "lattice-distributive" in failed
    assert rep.entry("lattice-distributive").witness is not None


def _n5_meet(u, v, order):
    lower = [w for w in ["bot", "a", "b", "c", "top"]
             if (w, u) in order and (w, v) in order]
    return max(lower, key=lambda w: sum((z, w) in order for z in lower))


def test_lawvere_report_is_analytic(lawvere):
    rep = check_quantale_laws(lawvere)
    assert rep.ok and all(e.analytic for e in rep.entries)
    rep2 = check_assumptions(lawvere)
    assert rep2.ok and all(e.analytic for e in rep2.entries)


def test_totally_below_boolean(q2):
    # hand-derived: the empty subset rules out anything below bottom
    assert totally_below(q2) == {("0", "1"), ("1", "1")}


def test_totally_below_bottom_never_holds():
    for q in FINITE_FIXTURES:
        rel = totally_below(q)
        assert all((u, q.bottom) not in rel for u in q.elements)


def test_totally_below_godel_chain(godel3):
    rel = totally_below(godel3)
    assert ("1/2", "1") in rel
    assert ("0", "1") in rel


def test_totally_below_cap():
    with pytest.raises(CapExceeded):
        totally_below(Quantale.godel(6), cap=4)


@pytest.mark.parametrize("q", FINITE_FIXTURES, ids=lambda q: repr(q))
def test_assumptions_pass_on_builtins(q):
    assert check_assumptions(q).ok


def test_trivial_quantale_flagged():
    one = Quantale.godel(1)
    assert one.trivial
    rep = check_assumptions(one)
    assert not rep.entry("non-trivial").passed


def test_by_name_and_parse():
    assert Quantale.by_name("bool") == Quantale.boolean()
    assert Quantale.by_name("godel:3") == Quantale.godel(3)
    assert Quantale.by_name("lukasiewicz:5") == Quantale.lukasiewicz(5)
    assert Quantale.by_name("lawvere") == Quantale.lawvere()
    with pytest.raises(DescriptorError):
        Quantale.by_name("heyting:3")
    lw = Quantale.lawvere()
    assert lw.parse("1/2") == Fraction(1, 2)
    assert lw.parse("inf") is INF
    assert lw.format(Fraction(3, 4)) == "3/4"
    assert lw.format(INF) == "inf"
    with pytest.raises(DescriptorError):
        lw.parse("-1")
    with pytest.raises(DescriptorError):
        Quantale.godel(3).parse("2/3")


def test_join_meet_tables_match_chain_arithmetic(godel3):
    assert godel3.join("0", "1/2") == "1/2"
    assert godel3.meet("1/2", "1") == "1/2"
    assert godel3.join_all([]) == "0"
    assert godel3.meet_all([]) == "1"


def test_lawvere_lattice_reversed(lawvere):
    assert lawvere.leq(INF, Fraction(1))
    assert not lawvere.leq(Fraction(1), INF)
    assert lawvere.join(Fraction(1), Fraction(2)) == Fraction(1)
    assert lawvere.meet(Fraction(1), Fraction(2)) == Fraction(2)
    assert lawvere.join_all([]) is INF
    assert lawvere.meet_all([]) == Fraction(0)
    assert lawvere.tensor(INF, Fraction(0)) is INF
