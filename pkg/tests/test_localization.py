import pytest

import frozen
import oracles as O
from filtalg import corpus
from filtalg.constructors import enveloping, polynomial_ring, weyl
from filtalg.dimension import ModulePresentation
from filtalg.dsl import parse_presentation
from filtalg.filtration import Filtration
from filtalg.localization import (
    CheckFailed,
    Inconclusive,
    NotAnnihilated,
    ObstructionCertified,
    OreQuery,
    Witness,
    ad_nilpotency,
    diagonal_support_check,
    differential_filtration_check,
    is_nonzerodivisor_to_cap,
    mu,
    mu_obstruction,
    mu_obstruction_for,
    ore_witness_search,
    right_ore_search,
    skew_example,
    skew_ore_query,
    verify_witness,
)
from filtalg.ncalg import NCPoly, complete_to_cap


def a1_rs():
    pres, _ = corpus.a1()
    return pres, complete_to_cap(pres, cap=10)


def test_a1_witness_y_over_x():
    pres, rs = a1_rs()
    v = ore_witness_search(OreQuery(pres, pres.gen("x"), pres.gen("y")), rs)
    assert isinstance(v, Witness) and v.k == 2
    assert v.a_prime == NCPoly(frozen.A1_ORE_Y)
    assert pres.fmt(v.a_prime) == "x*y - 1"


def test_trivial_witness():
    pres, rs = a1_rs()
    v = ore_witness_search(OreQuery(pres, pres.gen("x"), pres.gen("x")), rs)
    assert v == Witness(pres.gen("x"), 1)


def test_spec_literal_witness_does_not_verify():
    # x^2 * y and (x*y + 1) * x differ by 2x
    pres, rs = a1_rs()
    w = Witness(pres.poly("x*y + 1"), 2)
    assert not verify_witness(pres, pres.gen("x"), pres.gen("y"), w, rs=rs)


def test_fourth_power_needs_k5():
    pres, rs = a1_rs()
    y4 = pres.poly("y^4")
    v = ore_witness_search(OreQuery(pres, pres.gen("x"), y4, k_max=4, cap=10), rs)
    assert isinstance(v, Inconclusive)
    v = ore_witness_search(OreQuery(pres, pres.gen("x"), y4, k_max=5, cap=10), rs)
    assert isinstance(v, Witness) and v.k == 5
    assert v.a_prime == NCPoly(frozen.A1_ORE_Y4)


def least_k(w, s_index, n):
    """Least k for a normal word w (x-letters before y-letters) and s a single letter.

    For s = x_i, x_i^(k+i) y_i^j is in A*x_i once k + i > j.  For s = y_i
    one power suffices if w already contains y_i, else k = (x_i-exponent) + 1.
    """
    if s_index < n:
        return max(1, w.count(s_index + n) - w.count(s_index) + 1)
    if s_index in w:
        return 1
    return w.count(s_index - n) + 1


@pytest.mark.parametrize("n", [1, 2])
def test_weyl_ore_family_least_k(n):
    pres, _, _ = weyl(n)
    rs = complete_to_cap(pres, cap=8)
    for si in range(2 * n):
        s = NCPoly.gen(si)
        for w in rs.normal_words(3 if n == 1 else 2):
            if not w:
                continue
            v = ore_witness_search(OreQuery(pres, s, NCPoly.word(w), k_max=4, cap=8), rs)
            assert isinstance(v, Witness), (si, w)
            assert v.k == least_k(w, si, n), (si, w)


def test_witness_soundness_by_operator_oracle():
    pres, rs = a1_rs()
    ops, xs = O.weyl_ops(1)
    for s_name in ("x", "y"):
        s = pres.gen(s_name)
        for a_text in ("y", "x*y", "y*y", "x*x*y"):
            a = pres.poly(a_text)
            v = ore_witness_search(OreQuery(pres, s, a, k_max=4, cap=10), rs)
            lhs = dict((s ** v.k * a).items())
            rhs = dict((v.a_prime * s).items())
            assert O.same_operator(ops, xs, lhs, rhs, degree=8), (s_name, a_text)


def test_right_ore_search():
    pres, _ = corpus.a1()
    v = right_ore_search(OreQuery(pres, pres.gen("x"), pres.gen("y")))
    assert isinstance(v, Witness) and v.k == 2
    # y * x^2 = x * (y*x + 1) in A1
    rs = complete_to_cap(pres, cap=8)
    assert rs.nf(pres.poly("y*x*x")) == rs.nf(pres.gen("x") * v.a_prime)
    assert rs.nf(v.a_prime) == pres.poly("x*y + 2")


def test_nonzerodivisor():
    pres, rs = a1_rs()
    assert is_nonzerodivisor_to_cap(rs, pres.gen("x"), 5)
    q = polynomial_ring(("x",))
    nil = parse_presentation("algebra N { gens x:1, y:1; rel y*x - x*y; rel x*x; }")
    rs_n = complete_to_cap(nil, cap=6)
    assert not is_nonzerodivisor_to_cap(rs_n, nil.gen("x"), 3)
    assert is_nonzerodivisor_to_cap(complete_to_cap(q, cap=4), q.gen("x"), 3)


def test_mu_examples():
    b, env = skew_example(8)
    rs_b = complete_to_cap(b, cap=8)
    rs_e = complete_to_cap(env, cap=8)
    s = env.poly("t - t'")
    assert mu(rs_e.nf(s * env.gen("a")), b, rs_b) == b.poly("2*t*a")
    p3 = rs_e.nf(s * s * s * env.gen("a"))
    assert mu(p3, b, rs_b) == b.poly("8*t*t*t*a")
    for w in ("a*a'", "t*a'", "a", "a'*t'"):
        assert mu(rs_e.nf(env.poly(w) * s), b, rs_b).is_zero(), w


def test_mu_rejects_unsorted_word():
    b, env = skew_example(6)
    rs_b = complete_to_cap(b, cap=6)
    with pytest.raises(CheckFailed):
        mu(NCPoly.word((2, 0)), b, rs_b)


def test_mu_obstruction_matches_tensor_oracle():
    cert = mu_obstruction(6, 6)
    for n, text in cert.values:
        ((exps, coef),) = frozen.MU_POWERS[n].items()
        assert text == f"{coef}*" + "*".join(["t"] * exps[0] + ["a"] * exps[1])
    assert cert.words_checked > 0


def test_obstruction_consistency():
    q = skew_ore_query(k_max=4, cap=6)
    plain = ore_witness_search(q)
    assert isinstance(plain, Inconclusive)
    v = ore_witness_search(q, obstruction=mu_obstruction_for)
    assert isinstance(v, ObstructionCertified)
    assert any("not in A^e s" in d for d in v.details)
    pres, _ = corpus.a1()
    assert mu_obstruction_for(OreQuery(pres, pres.gen("x"), pres.gen("y"))) is None


def test_diffcheck_examples():
    a1, F = corpus.a1()
    assert differential_filtration_check(a1, ["x"], F, 6).passed
    b, _ = skew_example(6)
    rep = differential_filtration_check(b, ["t"], Filtration(b, (0, 0)), 6)
    assert not rep.passed
    first = rep.failures[0]
    assert (first.c, first.word) == ("t", "a")
    k2 = polynomial_ring(("x", "y"))
    assert differential_filtration_check(k2, ["x", "y"], cap=5).passed


@pytest.mark.parametrize("name, c_gens", [("A1", ["x"]), ("A2", ["x1", "x2"]), ("UT", ["x"])])
def test_differential_implies_diagonal_nilpotence(name, c_gens):
    pres, F = corpus.twofilt_corpus()[name]
    rep = differential_filtration_check(pres, c_gens, F, 6)
    assert rep.passed
    i0 = rep.min_degree
    rs = F.complete(8)
    for w in rs.normal_words(5):
        i = sum(F.degrees[g] for g in w)
        k = ad_nilpotency(pres, c_gens, NCPoly.word(w), i - i0 + 1, rs)
        assert k is not None and k <= i - i0 + 1, w


def test_diagonal_support_examples():
    C = polynomial_ring(("x",), name="C")
    env, _ = enveloping(C)
    diag = ModulePresentation.cyclic(env, ["x - x'"])
    assert diagonal_support_check(C, diag, 4).results == [1]
    whole = ModulePresentation.cyclic(env)
    assert diagonal_support_check(C, whole, 4).results == [NotAnnihilated(4)]
    Ct = polynomial_ring(("t",), name="C")
    env_t, _ = enveloping(Ct)
    skew_line = ModulePresentation.cyclic(env_t, ["t + t'"])
    rep = diagonal_support_check(Ct, skew_line, 5)
    assert not rep.supported


def test_diagonal_check_needs_enveloping_module():
    C = polynomial_ring(("x",), name="C")
    a1, _ = corpus.a1()
    with pytest.raises(ValueError):
        diagonal_support_check(C, ModulePresentation.cyclic(a1))


def test_query_validation():
    pres, _ = corpus.a1()
    with pytest.raises(ValueError):
        OreQuery(pres, NCPoly.zero(), pres.gen("y"))
