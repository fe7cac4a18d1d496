"""Ore conditions, the multiplication-map obstruction and diagonal support.

The left Ore search looks for ``s^k * a = a' * s``: the set of powers of
``s`` meets ``A s``-translates of ``a`` from the left.  Membership in
``A s`` is a finite linear system over normal words below the cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .constructors import enveloping, polynomial_ring, skew_poly
from .dimension import ModulePresentation, complete_module
from .filtration import Filtration
from .ncalg import (
    NEG_INF,
    AlgebraError,
    CapExceeded,
    NCPoly,
    Presentation,
    RewriteSystem,
    complete_to_cap,
    format_poly,
    format_word,
    weighted_degree,
)


class CheckFailed(AlgebraError):
    pass


@dataclass(frozen=True)
class OreQuery:
    presentation: Presentation
    s: NCPoly
    a: NCPoly
    k_max: int = 4
    cap: int = 8

    def __post_init__(self):
        if NCPoly.coerce(self.s).is_zero():
            raise ValueError("s must be nonzero")


@dataclass(frozen=True)
class Witness:
    a_prime: NCPoly
    k: int
    kind: str = "witness"


@dataclass(frozen=True)
class ObstructionCertified:
    details: tuple
    kind: str = "obstruction"


@dataclass(frozen=True)
class Inconclusive:
    cap: int
    k_max: int
    reason: str = ""
    kind: str = "inconclusive"


# -- exact linear algebra --------------------------------------------

class Echelon:
    """Incremental row echelon form over Q for sparse vectors.

    Each stored row carries the combination of input columns producing
    it, so membership queries return coefficients.
    """

    def __init__(self, rank_key=None):
        self.pivots: dict = {}
        self.key = rank_key or (lambda x: x)

    def _reduce(self, vec: dict, combo: dict):
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            p = max(vec, key=self.key)
            if p not in self.pivots:
                return vec, combo, p
            row, rcombo = self.pivots[p]
            c = vec[p]
            for t, d in row.items():
                s = vec.get(t, 0) - c * d
                if s:
                    vec[t] = s
                else:
                    vec.pop(t, None)
            for t, d in rcombo.items():
                s = combo.get(t, 0) - c * d
                if s:
                    combo[t] = s
                else:
                    combo.pop(t, None)
        return vec, combo, None

    def add(self, vec: Mapping, label) -> bool:
        vec, combo, p = self._reduce(vec, {label: Fraction(1)})
        if p is None:
            return False
        c = vec[p]
        self.pivots[p] = ({t: d / c for t, d in vec.items()},
                          {t: d / c for t, d in combo.items()})
        return True

    def solve(self, target: Mapping):
        """Coefficients x with sum x_label * column_label = target, or None."""
        vec, combo, p = self._reduce(target, {})
        if vec:
            return None
        return {t: -d for t, d in combo.items()}


def _poly_vec(p: NCPoly) -> dict:
    return dict(p.items())


def left_multiples_basis(rs: RewriteSystem, s: NCPoly, max_size: int) -> Echelon:
    """Echelon form of {nf(w*s) : w normal, size(w) <= max_size}."""
    ech = Echelon(rank_key=rs.order.key)
    for w in rs.normal_words(max_size):
        ech.add(_poly_vec(rs.normal_form(NCPoly.word(w) * s, check_cap=False)), w)
    return ech


def in_left_ideal(rs: RewriteSystem, target: NCPoly, s: NCPoly, max_size: int,
                  ech: Echelon | None = None):
    """Some a' with nf(a' * s) = nf(target), using words up to ``max_size``."""
    if ech is None:
        ech = left_multiples_basis(rs, s, max_size)
    sol = ech.solve(_poly_vec(rs.normal_form(target, check_cap=False)))
    if sol is None:
        return None
    return NCPoly({w: c for w, c in sol.items()})


def verify_witness(pres: Presentation, s, a, w: Witness, cap: int = 8,
                   rs: RewriteSystem | None = None) -> bool:
    """Independent check that s^k * a and a' * s have equal normal forms."""
    s, a = NCPoly.coerce(s), NCPoly.coerce(a)
    if rs is None:
        rs = complete_to_cap(pres, cap=cap)
    lhs = rs.normal_form(s ** w.k * a, check_cap=False)
    rhs = rs.normal_form(w.a_prime * s, check_cap=False)
    return lhs == rhs


def ore_witness_search(q: OreQuery, rs: RewriteSystem | None = None,
                       obstruction: Callable | None = None):
    """Least k <= k_max with s^k * a in A * s, with the witness a'.

    Without a witness the verdict is Inconclusive, unless ``obstruction``
    (called with the query) returns a certificate.
    """
    pres = q.presentation
    s, a = NCPoly.coerce(q.s), NCPoly.coerce(q.a)
    if rs is None:
        rs = complete_to_cap(pres, cap=q.cap)
    if not rs.complete:
        raise CapExceeded(f"completion did not close below cap {q.cap}", cap=q.cap)
    order = rs.order
    s_nf = rs.normal_form(s, check_cap=False)
    if s_nf.is_zero():
        raise ValueError("s is zero in the algebra")
    s_size = min(order.size(w) for w in s_nf.words())
    room = q.cap - s_size
    if room < 0:
        raise CapExceeded("s does not fit below the cap", cap=q.cap)
    ech = left_multiples_basis(rs, s_nf, room)
    for k in range(1, q.k_max + 1):
        target = rs.normal_form(s_nf ** k * a, check_cap=False)
        sol = ech.solve(_poly_vec(target))
        if sol is not None:
            wit = Witness(NCPoly(sol), k)
            if not verify_witness(pres, s_nf, a, wit, rs=rs):
                raise CheckFailed("witness failed re-verification")
            return wit
    if obstruction is not None:
        cert = obstruction(q)
        if cert is not None:
            return cert
    return Inconclusive(q.cap, q.k_max,
                        f"no a' among normal words of degree <= {room} for k <= {q.k_max}")


def right_ore_search(q: OreQuery, **kw):
    """The right condition, as the left one on the opposite presentation."""
    from .constructors import opposite
    op = opposite(q.presentation)
    v = ore_witness_search(OreQuery(op, NCPoly.coerce(q.s).reverse(),
                                    NCPoly.coerce(q.a).reverse(), q.k_max, q.cap), **kw)
    # a' was found in the opposite algebra; read its words back in A
    if isinstance(v, Witness):
        return Witness(v.a_prime.reverse(), v.k)
    return v


def is_nonzerodivisor_to_cap(rs: RewriteSystem, s: NCPoly, max_size: int) -> bool:
    """w * s is nonzero for all nonzero combinations of normal words up to the size.

    This is the torsion side check: left multiples of s are independent.
    """
    words = rs.normal_words(max_size)
    ech = Echelon(rank_key=rs.order.key)
    return all(ech.add(_poly_vec(rs.normal_form(NCPoly.word(w) * s, check_cap=False)), w)
               for w in words)


# -- the skew example ------------------------------------------------

def skew_example(cap: int = 8):
    """B = k[t][a; sigma] with sigma(t) = -t, and its enveloping algebra."""
    base = polynomial_ring(("t",), name="C")
    b = skew_poly(base, {"t": NCPoly.gen(0).scale(-1)}, "a", degree=1, cap=cap)
    b = b.renamed("B")
    env, f = enveloping(b)
    return b, env


def mu(env_word_poly: NCPoly, b: Presentation, rs_b: RewriteSystem) -> NCPoly:
    """Multiplication map B (x) B^op -> B on enveloping normal forms.

    A word u * v' (unprimed letters u, primed letters v) stands for
    u (x) v^op and maps to u * reverse(v).
    """
    n = b.ngens
    out = NCPoly.zero()
    for w, c in env_word_poly.items():
        left = tuple(g for g in w if g < n)
        right = tuple(g - n for g in w if g >= n)
        if w != left + tuple(g + n for g in right):
            raise CheckFailed("enveloping word is not of the form u * v'")
        out = out + NCPoly.word(left + tuple(reversed(right)), c)
    return rs_b.normal_form(out, check_cap=False)


@dataclass(frozen=True)
class MuCertificate:
    n_max: int
    cap: int
    values: tuple
    words_checked: int
    conclusion: str


def mu_obstruction(n_max: int = 6, cap: int = 8) -> MuCertificate:
    """Verify mu(s^n (a(x)1)) = (2t)^n a and mu(w s) = 0 below the cap."""
    b, env = skew_example(cap)
    rs_b = complete_to_cap(b, cap=max(cap, n_max + 1))
    rs_e = complete_to_cap(env, cap=max(cap, n_max + 1))
    t, a = NCPoly.gen(0), NCPoly.gen(1)
    tp = NCPoly.gen(2)
    s = t - tp
    values = []
    power = NCPoly.one()
    for n in range(1, n_max + 1):
        power = rs_e.normal_form(power * s, check_cap=False)
        got = mu(rs_e.normal_form(power * a, check_cap=False), b, rs_b)
        want = rs_b.normal_form(t.scale(2) ** n * a, check_cap=False)
        if got != want:
            raise CheckFailed(f"mu(s^{n} (a(x)1)) = {format_poly(got, b.gens)}, "
                              f"expected {format_poly(want, b.gens)}")
        values.append((n, format_poly(got, b.gens, rs_b.order)))
    words = rs_e.normal_words(cap)
    for w in words:
        img = mu(rs_e.normal_form(NCPoly.word(w) * s, check_cap=False), b, rs_b)
        if not img.is_zero():
            raise CheckFailed(f"mu({format_word(w, env.gens)} * s) = "
                              f"{format_poly(img, b.gens)} is not zero")
    conclusion = (f"A^e s lies in ker(mu) while mu(s^n (a(x)1)) != 0 for n <= {n_max}: "
                  f"s^n (a(x)1) is not in A^e s, no left Ore witness with k <= {n_max}")
    return MuCertificate(n_max, cap, tuple(values), len(words), conclusion)


def skew_ore_query(k_max: int = 6, cap: int = 8) -> OreQuery:
    b, env = skew_example(cap)
    s = NCPoly.gen(0) - NCPoly.gen(2)
    return OreQuery(env, s, NCPoly.gen(1), k_max, cap)


def mu_obstruction_for(q: OreQuery):
    """Obstruction hook for :func:`ore_witness_search` on the skew query."""
    b, env = skew_example(q.cap)
    if q.presentation != env or NCPoly.coerce(q.s) != NCPoly.gen(0) - NCPoly.gen(2) \
            or NCPoly.coerce(q.a) != NCPoly.gen(1):
        return None
    cert = mu_obstruction(q.k_max, q.cap)
    return ObstructionCertified((cert.conclusion,) + tuple(
        f"mu(s^{n} (a(x)1)) = {v}" for n, v in cert.values))


# -- differential bimodules ------------------------------------------

@dataclass(frozen=True)
class CentralityFailure:
    c: str
    word: str
    degree: int
    commutator_degree: object


@dataclass
class DiffCheckReport:
    cap: int
    c_gens: tuple
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    min_degree: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def degree_status(self) -> list:
        bad = {f.degree for f in self.failures}
        return [(i, self.checked[i], i not in bad) for i in sorted(self.checked)]


def differential_filtration_check(pres: Presentation, c_gens: Sequence[str],
                                  f: Filtration | None = None, cap: int = 8) -> DiffCheckReport:
    """deg^F(c m - m c) <= deg^F(m) - 1 for C-generators c and normal words m."""
    if f is None:
        f = Filtration.of(pres)
    for g in c_gens:
        pres.index(g)
    rs = f.complete(cap)
    if not rs.complete:
        raise CapExceeded(f"completion did not close below cap {cap}", cap=cap)
    words = rs.normal_words(cap)
    report = DiffCheckReport(cap, tuple(c_gens))
    degs = [sum(f.degrees[g] for g in w) for w in words]
    report.min_degree = min(degs)
    for w, i in zip(words, degs):
        report.checked[i] = report.checked.get(i, 0) + 1
        m = NCPoly.word(w)
        for g in c_gens:
            c = pres.gen(g)
            try:
                com = rs.normal_form(c * m - m * c)
            except CapExceeded:
                continue
            d = weighted_degree(com, f.degrees)
            if d > i - 1:
                report.failures.append(CentralityFailure(
                    g, format_word(w, pres.gens), i, d))
    return report


def ad_nilpotency(pres: Presentation, c_gens: Sequence[str], m: NCPoly, k_max: int,
                  rs: RewriteSystem):
    """Least k with ad_{c_1} ... ad_{c_k}(m) = 0 for all choices, else None.

    This is I^k acting on m for the bimodule A, with I the diagonal ideal.
    """
    layer = {rs.normal_form(m, check_cap=False)}
    layer.discard(NCPoly.zero())
    k = 0
    while layer:
        if k == k_max:
            return None
        nxt = set()
        for p in layer:
            for g in c_gens:
                c = pres.gen(g)
                q = rs.normal_form(c * p - p * c, check_cap=False)
                if not q.is_zero():
                    nxt.add(q)
        layer = nxt
        k += 1
    return k


@dataclass(frozen=True)
class NotAnnihilated:
    k_max: int


@dataclass
class DiagonalReport:
    k_max: int
    results: list

    @property
    def supported(self) -> bool:
        return all(not isinstance(r, NotAnnihilated) for r in self.results)


def diagonal_ideal_generators(c: Presentation) -> list:
    """c (x) 1 - 1 (x) c in enveloping(C), one per generator of C."""
    n = c.ngens
    return [NCPoly.gen(i) - NCPoly.gen(n + i) for i in range(n)]


def diagonal_support_check(c: Presentation, m: ModulePresentation, k_max: int = 6,
                           cap: int = 8) -> DiagonalReport:
    """Per module generator, least k <= k_max with I^k e_j = 0, else NotAnnihilated."""
    env, _ = enveloping(c)
    if m.algebra.gens != env.gens or m.algebra.relations != env.relations:
        raise ValueError("module must be presented over enveloping(C)")
    mrs = complete_module(m, cap)
    if not mrs.complete:
        raise CapExceeded(f"module completion did not close below cap {cap}", cap=cap)
    deltas = diagonal_ideal_generators(c)
    results = []
    for j in range(m.rank):
        layer = [{((), j): Fraction(1)}]
        layer = [mrs.reduce(v) for v in layer]
        layer = [v for v in layer if v]
        k = 0
        found = None
        while True:
            if not layer:
                found = k
                break
            if k == k_max:
                break
            nxt = []
            for v in layer:
                for d in deltas:
                    prod = {}
                    for (w, pos), coef in v.items():
                        for u, e in d.items():
                            key = (u + w, pos)
                            prod[key] = prod.get(key, 0) + coef * e
                    r = mrs.reduce({t: x for t, x in prod.items() if x})
                    if r:
                        nxt.append(r)
            layer = nxt
            k += 1
        results.append(found if found is not None else NotAnnihilated(k_max))
    return DiagonalReport(k_max, results)
