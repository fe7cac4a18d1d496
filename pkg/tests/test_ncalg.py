from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import frozen
import oracles as O
from filtalg.constructors import polynomial_ring, sl2, u_lie, weyl
from filtalg.ncalg import (
    CAP_EXCEEDED,
    COMPLETE,
    CapExceeded,
    MonomialOrder,
    NCPoly,
    NonOrientableRelation,
    Presentation,
    RewriteSystem,
    complete_to_cap,
    format_poly,
    free_mul,
    overlap_confluence_report,
    weighted_degree,
    NEG_INF,
)

X, Y = NCPoly.gen(0), NCPoly.gen(1)


def a1_rs(cap=8):
    pres, _, _ = weyl(1)
    return pres, complete_to_cap(pres, cap=cap)


def test_free_mul_examples():
    assert free_mul(X, Y + 1) == NCPoly({(0, 1): 1, (0,): 1})
    assert free_mul(X + Y, X) == NCPoly({(0, 0): 1, (1, 0): 1})
    assert free_mul(X + Y, NCPoly.zero()).is_zero()


def test_coefficients_stay_reduced():
    p = NCPoly({(0,): Fraction(2, 4), (1,): 0})
    assert p.coefficient((0,)) == Fraction(1, 2)
    assert list(p.words()) == [(0,)]
    assert (p - p).is_zero() and (p - p) == 0


def test_a1_single_rule():
    pres, rs = a1_rs()
    assert rs.status == COMPLETE
    assert rs.rule_strings() == ["y*x -> x*y + 1"]


def test_commutative_rule():
    pres = polynomial_ring(("x", "y"))
    rs = complete_to_cap(pres, cap=4)
    assert rs.complete and rs.rule_strings() == ["y*x -> x*y"]


def test_sl2_rules_and_pbw_words():
    pres, _ = u_lie(sl2())
    rs = complete_to_cap(pres, cap=6)
    assert rs.complete and len(rs.rules) == 3
    for w in rs.normal_words(6):
        assert list(w) == sorted(w), "normal words are ordered monomials e^i f^j h^k"


def test_normal_form_examples():
    pres, rs = a1_rs()
    assert rs.nf(pres.poly("y*x")) == pres.poly("x*y + 1")
    assert rs.nf(NCPoly.one()) == 1
    assert rs.nf(pres.poly("y*x*x")) == NCPoly(frozen.A1_NF_YXX)


def test_cap_exceeded_on_long_word():
    _, rs = a1_rs(cap=4)
    with pytest.raises(CapExceeded):
        rs.nf(NCPoly.word((1,) * 5))


def test_non_orientable_relation():
    pres = Presentation(("x",), (1,), (NCPoly.gen(0) - 1, NCPoly.gen(0) - 2))
    with pytest.raises(NonOrientableRelation):
        complete_to_cap(pres, cap=4)


def test_cap_below_relation_degree():
    pres, _ = u_lie(sl2())
    with pytest.raises(ValueError):
        complete_to_cap(pres, cap=1)


def test_cap_exceeded_status():
    # x*y*x = y*x*y forces ever longer rules under length-lex
    pres = Presentation(("x", "y"), (1, 1), (NCPoly({(1, 0, 1): 1, (0, 1, 0): -1}),))
    rs = complete_to_cap(pres, cap=5)
    assert rs.status == CAP_EXCEEDED


def test_confluence_reports():
    _, rs = a1_rs()
    assert overlap_confluence_report(rs).confluent
    pres, _ = u_lie(sl2())
    partial = RewriteSystem({(1, 0): NCPoly({(0, 1): 1})}, pres.order(), 6, gens=pres.gens)
    # f*e -> e*f + h, h*e -> e*h + e, h*f -> f*h violates the Jacobi identity
    rules = {(1, 0): NCPoly({(0, 1): 1, (2,): 1}), (2, 0): NCPoly({(0, 2): 1, (0,): 1}),
             (2, 1): NCPoly({(1, 2): 1})}
    broken = RewriteSystem(rules, pres.order(), 6, gens=pres.gens)
    rep = overlap_confluence_report(broken)
    assert not rep.confluent and rep.failures()
    empty = RewriteSystem({}, pres.order(), 6, gens=pres.gens)
    assert overlap_confluence_report(empty).confluent
    assert not overlap_confluence_report(empty).pairs
    assert overlap_confluence_report(partial).confluent


def test_weighted_degree_of_zero():
    assert weighted_degree(NCPoly.zero(), (1, 1)) == NEG_INF


def test_format_poly():
    pres, rs = a1_rs()
    assert format_poly(pres.poly("2*y*x - 1/2"), pres.gens, rs.order) == "2*y*x - 1/2"


# -- properties ---------------------------------------------------------

words2 = st.lists(st.integers(0, 1), max_size=4).map(tuple)


@given(words2, words2, words2)
def test_order_compatible_with_concatenation(u, v, w):
    order = MonomialOrder((0, 1))
    if order.less(u, v):
        assert order.less(w + u, w + v)
        assert order.less(u + w, v + w)


def polys(n, max_len=3):
    term = st.tuples(st.lists(st.integers(0, n - 1), max_size=max_len).map(tuple),
                     st.integers(-3, 3))
    return st.lists(term, max_size=4).map(lambda ts: NCPoly(dict(ts)))


@settings(max_examples=60, deadline=None)
@given(polys(2), polys(2))
def test_nf_multiplicative_a1(p, q):
    _, rs = a1_rs()
    assert rs.nf(rs.nf(p) * rs.nf(q)) == rs.nf(p * q)


@settings(max_examples=40, deadline=None)
@given(polys(3, 2), polys(3, 2))
def test_nf_multiplicative_sl2(p, q):
    pres, _ = u_lie(sl2())
    rs = complete_to_cap(pres, cap=6)
    assert rs.nf(rs.nf(p) * rs.nf(q)) == rs.nf(p * q)


_A1_SPAN = O.ideal_span(2, (1, 1), [{(1, 0): 1, (0, 1): -1, (): -1}], 5)


@settings(max_examples=60, deadline=None)
@given(polys(2, 5))
def test_nf_soundness_against_span_oracle(p):
    _, rs = a1_rs()
    diff = p - rs.nf(p)
    assert O.in_span(_A1_SPAN, dict(diff.items()), len)


@settings(max_examples=30, deadline=None)
@given(polys(2, 4))
def test_nf_is_normal_and_idempotent(p):
    _, rs = a1_rs()
    q = rs.nf(p)
    assert all(rs.is_normal(w) for w in q.words())
    assert rs.nf(q) == q


def test_determinism():
    pres, _ = u_lie(sl2())
    a = complete_to_cap(pres, cap=6)
    b = complete_to_cap(pres, cap=6)
    assert a.rules == b.rules and a.rule_strings() == b.rule_strings()
