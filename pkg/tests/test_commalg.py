from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import frozen
import oracles as O
from filtalg import corpus
from filtalg.commalg import (
    CanonicalComplexSpec,
    CModule,
    CPoly,
    InsufficientData,
    NotFiniteOverAmbient,
    PolyRing,
    buchberger,
    cdim_commutative,
    check_resolution,
    ext_modules,
    format_cpoly,
    free_resolution,
    growth_degree,
    hilbert_function,
    ideal_as_module,
    resolution_ranks,
)
from filtalg.constructors import weyl
from filtalg.filtration import gr_dims
from filtalg.ncalg import NEG_INF

R2 = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "z"))
x, y = R2.var(0), R2.var(1)
X, Y, Z = R3.var(0), R3.var(1), R3.var(2)


def test_cpoly_arithmetic_and_format():
    p = (x + y) ** 2 - x * x
    assert format_cpoly(p) == "2*x*y + y^2"
    assert R2.parse("x^2 - 1/2*y") == x ** 2 - Fraction(1, 2) * y
    assert (p - p).is_zero() and p.degree() == 2
    assert format_cpoly(R2.zero()) == "0"


def test_buchberger_examples():
    gb = buchberger([x ** 2, x * y], R2)
    assert sorted(format_cpoly(g) for g in gb.polys) == ["x*y", "x^2"]
    assert [format_cpoly(g) for g in buchberger([x], R2).polys] == ["x"]
    lex = PolyRing(("z", "y", "x"), order="lex")
    z_, y_, x_ = lex.var(0), lex.var(1), lex.var(2)
    gb = buchberger([y_ - x_ ** 2, z_ - x_ ** 3], lex)
    assert sorted(format_cpoly(g) for g in gb.polys) == sorted(frozen.LEX_ELIMINATION)
    assert gb.contains(z_ * z_ - y_ ** 3)   # eliminant of the twisted cubic


def sympy_reduced(gens, order):
    syms = sp.symbols("x y z")[:len(gens[0].ring.names)]
    exprs = [sp.Add(*[sp.Rational(c.numerator, c.denominator) *
                      sp.Mul(*[s ** k for s, k in zip(syms, e)])
                      for e, c in g.terms.items()]) for g in gens]
    G = O.sympy_groebner(exprs, list(syms), order=order)
    out = set()
    for g in G.exprs:
        poly = sp.Poly(g, *syms)
        lc = poly.LC(order=order)
        out.add(tuple(sorted((m, Fraction(int(sp.numer(c / lc)), int(sp.denom(c / lc))))
                             for m, c in poly.terms())))
    return out


def ours_reduced(gb):
    return {tuple(sorted(g.terms.items())) for g in gb.polys}


monomial = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
cpoly3 = st.lists(st.tuples(monomial, st.integers(-3, 3)), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(cpoly3, min_size=1, max_size=3))
def test_buchberger_matches_sympy(raw):
    gens = [CPoly(R3, dict(t)) for t in raw]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    assert ours_reduced(buchberger(gens, R3)) == sympy_reduced(gens, "grevlex")


def test_hilbert_examples():
    assert tuple(hilbert_function(CModule.quotient(R2, [x]), 5)) == (1,) * 6
    assert tuple(hilbert_function(CModule.free(R2), 5)) == (1, 2, 3, 4, 5, 6)
    m = CModule.quotient(R3, [X * Y, X * Z, Y * Z])
    assert list(hilbert_function(m, 6)) == frozen.HILBERT_XYZ_COORD_AXES
    m = CModule.quotient(R3, [Y - X ** 2, Z - X ** 3])
    assert list(hilbert_function(m, 5)) == frozen.HILBERT_TWISTED_CUBIC


@pytest.mark.parametrize("label, module", corpus.commutative_corpus(R3))
def test_hilbert_matches_sympy_standard_monomials(label, module):
    if module.rank != 1:
        return
    sx, sy, sz = sp.symbols("x y z")
    gens = []
    for row in module.rows():
        p = row[0]
        gens.append(sp.Add(*[sp.Rational(c.numerator, c.denominator) * sx ** e[0] *
                             sy ** e[1] * sz ** e[2] for e, c in p.terms.items()]))
    want = O.standard_monomial_counts(gens, [sx, sy, sz], 5) if gens else \
        [len(list(R3.monomials_of_degree(d))) for d in range(6)]
    assert list(hilbert_function(module, 5)) == want, label


def test_growth_degree_examples():
    assert growth_degree(hilbert_function(CModule.free(R2), 10)) == 2
    _, _, bern = weyl(1)
    assert growth_degree(gr_dims(bern.weighted(), bern, 10)) == 2
    assert growth_degree([0] * 10) == NEG_INF
    with pytest.raises(InsufficientData):
        growth_degree([1, 2])
    with pytest.raises(InsufficientData):
        growth_degree([1, 2, 4, 8, 16, 32, 64, 128])


def test_resolution_examples():
    k = CModule.quotient(R2, [x, y])
    steps = free_resolution(k, 4)
    assert resolution_ranks(k, steps) == (1, 2, 1)
    assert check_resolution(k, steps)
    free = CModule.free(R2, 2)
    assert resolution_ranks(free, free_resolution(free, 3)) == (2,)
    m = CModule.quotient(R2, [x])
    assert resolution_ranks(m, free_resolution(m, 3)) == (1, 1)
    k3 = CModule.quotient(R3, [X, Y, Z])
    steps = free_resolution(k3, 5)
    assert resolution_ranks(k3, steps) == (1, 3, 3, 1) and check_resolution(k3, steps)


@pytest.mark.parametrize("ring", [R2, R3], ids=["2", "3"])
def test_resolutions_are_exact_on_corpus(ring):
    cases = corpus.commutative_corpus(ring)
    if ring is R2:
        cases.append(("rank2", corpus.present_rank2(R2)))
    for label, m in cases:
        steps = free_resolution(m, ring.n + 1)
        assert check_resolution(m, steps), label
        assert len(resolution_ranks(m, steps)) <= ring.n + 1, label


def nonzero_ext(m, top):
    return [r.q for r in ext_modules(m, top) if r.nonzero]


def test_ext_examples():
    assert nonzero_ext(CModule.quotient(R2, [x, y]), 2) == [2]
    assert nonzero_ext(CModule.free(R2, 2), 2) == [0]
    assert nonzero_ext(CModule.quotient(R2, [x]), 2) == [1]


def test_ext_of_k_is_one_dimensional():
    (e2,) = [r for r in ext_modules(CModule.quotient(R2, [x, y]), 2) if r.nonzero]
    assert tuple(hilbert_function(e2.module, 4)) == (1, 0, 0, 0, 0)


def test_cdim_examples():
    spec = CanonicalComplexSpec(R2)
    assert cdim_commutative(spec, CModule.quotient(R2, [x, y])) == 0
    assert cdim_commutative(spec, CModule.quotient(R2, [x])) == 1
    assert cdim_commutative(spec, CModule.free(R2)) == 2
    assert cdim_commutative(spec, CModule.quotient(R2, [R2.one()])) == NEG_INF
    with pytest.raises(NotFiniteOverAmbient):
        cdim_commutative(spec, CModule.free(R3))


def test_cdim_over_quotient_ambient():
    # A = k[x,y]/(xy): the module A itself has dimension 1
    spec = CanonicalComplexSpec(R2, (x * y,))
    assert cdim_commutative(spec, CModule.free(R2)) == 1


@pytest.mark.parametrize("ring", [R2, R3], ids=["2", "3"])
def test_cdim_equals_growth_on_corpus(ring):
    spec = CanonicalComplexSpec(ring)
    for label, m in corpus.commutative_corpus(ring):
        assert cdim_commutative(spec, m) == growth_degree(hilbert_function(m, 12)), label


@pytest.mark.parametrize("ring", [R2, R3], ids=["2", "3"])
def test_auslander_grade(ring):
    for label, m in corpus.commutative_corpus(ring):
        for e in ext_modules(m, ring.n):
            if not e.nonzero:
                continue
            below = [r.q for r in ext_modules(e.module, e.q - 1) if r.nonzero] if e.q else []
            assert below == [], (label, e.q)


def test_ideal_as_module():
    I = ideal_as_module(R2, [x, y])
    assert I.rank == 2 and I.weights == (1, 1)
    # I = (x, y) is generated in degree 1 with one Koszul syzygy
    assert tuple(hilbert_function(I, 4)) == (0, 2, 3, 4, 5)
    steps = free_resolution(I, 3)
    assert resolution_ranks(I, steps) == (2, 1) and check_resolution(I, steps)


R3_LEX = PolyRing(("x", "y", "z"), order="lex")


@settings(max_examples=25, deadline=None)
@given(st.lists(cpoly3, min_size=1, max_size=2))
def test_lex_buchberger_matches_sympy(raw):
    gens = [g for g in (CPoly(R3_LEX, dict(t)) for t in raw) if not g.is_zero()]
    if not gens:
        return
    assert ours_reduced(buchberger(gens, R3_LEX)) == sympy_reduced(gens, "lex")
