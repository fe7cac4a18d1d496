"""From a differential filtration of finite type to a filtration whose
associated graded algebra is commutative and connected.

Pipeline::

    split = derive_split(pres, F, cap=cap)
    sd = extract_structure(split, split.rewrite_system())
    e = compute_exponents(sd)
    G = build_G(split, e)
    report = verify_commutative_connected(G.presentation, G, cap)

The split sorts generators into ``a`` (degree 0, central symbol),
``b`` (positive degree, central symbol) and ``c`` (the rest, plus the
identity ``"1"`` as module generator).  Each commutator among them is
written as a sum of products f(a) g(b) c_k read off normal forms, and the
exponents e0 <= e1 <= e2 are chosen so that every such product drops in
the new filtration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .filtration import Filtration, deg_F
from .ncalg import (
    NEG_INF,
    AlgebraError,
    CapExceeded,
    MonomialOrder,
    NCPoly,
    Presentation,
    RewriteSystem,
    complete_to_cap,
    weighted_degree,
)

ONE = "1"


class SplitNotFound(AlgebraError):
    pass


class FormExtractionFailed(AlgebraError):
    pass


class VerificationFailed(AlgebraError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


@dataclass(frozen=True)
class GeneratorSplit:
    """Generators grouped a | b | c, with F-degrees.

    ``presentation`` lists the generators in a|b|c block order and carries
    the F-degrees.  ``c`` always ends with the identity ``"1"``.
    """

    a: tuple
    b: tuple
    c: tuple
    fdeg: Mapping
    presentation: Presentation
    cap: int
    notes: tuple = ()

    def rewrite_system(self) -> RewriteSystem:
        return complete_to_cap(self.presentation, cap=self.cap)

    @property
    def c_generators(self) -> tuple:
        return tuple(x for x in self.c if x != ONE)


def _gen_poly(name: str, gens) -> NCPoly:
    if name == ONE:
        return NCPoly.one()
    return NCPoly.gen(gens.index(name))


def derive_split(pres: Presentation, f: Filtration | None = None,
                 rs: RewriteSystem | None = None, cap: int = 8) -> GeneratorSplit:
    """Propose and certify an a|b|c split up to ``cap``.

    A generator goes to ``a`` or ``b`` when its symbol commutes with the
    symbols of all generators; symbols generate gr^F, so this is
    centrality.  The split is accepted only if every normal word up to the
    cap has the sorted shape a...a b...b (c)?, i.e. the products
    f(a) g(b) c_k span the algebra there.
    """
    if f is None:
        f = Filtration.of(pres)
    if rs is None:
        rs = f.complete(cap)
    if not rs.complete:
        raise SplitNotFound(f"completion is not closed below cap {cap}")
    gens = pres.gens
    n = pres.ngens
    d = {}
    try:
        for i, g in enumerate(gens):
            dg = deg_F(NCPoly.gen(i), f, rs)
            d[g] = int(dg) if dg != NEG_INF else 0
        central = {}
        for i, g in enumerate(gens):
            ok = True
            for j, h in enumerate(gens):
                if i == j:
                    continue
                com = rs.commutator(NCPoly.gen(i), NCPoly.gen(j))
                if weighted_degree(com, f.degrees) > d[g] + d[h] - 1:
                    ok = False
                    break
            central[g] = ok
    except CapExceeded as exc:
        raise SplitNotFound(f"centrality not certifiable below cap {cap}: {exc}") from exc

    a = tuple(g for g in gens if central[g] and d[g] == 0)
    b = tuple(g for g in gens if central[g] and d[g] > 0)
    c = tuple(g for g in gens if not central[g]) + (ONE,)
    fdeg = dict(d)
    fdeg[ONE] = 0
    ordered = pres.with_degrees(f.degrees).reordered(a + b + c[:-1])
    rs2 = complete_to_cap(ordered, cap=cap)
    if not rs2.complete:
        raise SplitNotFound(f"reordered completion is not closed below cap {cap}")
    na, nb = len(a), len(b)
    bad = [w for w in rs2.normal_words(cap) if not _sorted_shape(w, na, nb)]
    if bad:
        raise SplitNotFound(
            f"normal word {'*'.join(ordered.gens[g] for g in bad[0])} is not of the "
            f"form f(a) g(b) c; supply a split manually")
    notes = (f"centrality certified on generator pairs via symbol commutators, cap {cap}",
             f"spanning certified on {len(rs2.normal_words(cap))} normal words up to cap {cap}")
    return GeneratorSplit(a, b, c, fdeg, ordered, cap, notes)


def manual_split(pres: Presentation, a, b, f: Filtration | None = None,
                 cap: int = 8) -> GeneratorSplit:
    """Build a split from user-chosen a and b lists (the rest go to c)."""
    if f is None:
        f = Filtration.of(pres)
    rs = f.complete(cap)
    a, b = tuple(a), tuple(b)
    c = tuple(g for g in pres.gens if g not in a and g not in b) + (ONE,)
    fdeg = {}
    for i, g in enumerate(pres.gens):
        dg = deg_F(NCPoly.gen(i), f, rs)
        fdeg[g] = int(dg) if dg != NEG_INF else 0
    fdeg[ONE] = 0
    if any(fdeg[g] != 0 for g in a) or any(fdeg[g] < 1 for g in b):
        raise SplitNotFound("a-generators need F-degree 0 and b-generators F-degree >= 1")
    ordered = pres.with_degrees(f.degrees).reordered(a + b + c[:-1])
    return GeneratorSplit(a, b, c, fdeg, ordered, cap, ("manual split",))


def _sorted_shape(w, na, nb) -> bool:
    # a-block, then b-block, then at most one c-letter at the end
    stage = 0
    for k, g in enumerate(w):
        if g < na:
            if stage > 0:
                return False
        elif g < na + nb:
            stage = 1
        else:
            return k == len(w) - 1
    return True


@dataclass(frozen=True)
class Term:
    coefficient: object
    a_word: tuple
    b_word: tuple
    c: str

    def f_degree(self, fdeg) -> int:
        return sum(fdeg[x] for x in self.a_word + self.b_word) + fdeg[self.c]

    def as_poly(self, gens) -> NCPoly:
        p = NCPoly.const(self.coefficient)
        for x in self.a_word + self.b_word:
            p = p * NCPoly.gen(gens.index(x))
        return p * _gen_poly(self.c, gens)


KIND_NAMES = {1: "[a,b]", 2: "[b,b]", 3: "[a,c]", 4: "[b,c]", 5: "c*c"}


@dataclass(frozen=True)
class Identity:
    """One recorded identity ``lhs = sum_k f(a) g(b) c_k``."""

    kind: int
    left: str
    right: str
    terms: tuple
    bound: int

    def lhs(self, gens) -> NCPoly:
        u, v = _gen_poly(self.left, gens), _gen_poly(self.right, gens)
        if self.kind == 5:
            return u * v
        return u * v - v * u

    def f_bound_holds(self, fdeg) -> bool:
        return all(t.f_degree(fdeg) <= self.bound for t in self.terms)

    def max_a_degree(self) -> int:
        return max((len(t.a_word) for t in self.terms), default=0)


@dataclass(frozen=True)
class StructureData:
    split: GeneratorSplit
    identities: tuple

    def bounds_hold(self) -> bool:
        return all(i.f_bound_holds(self.split.fdeg) for i in self.identities)

    def reexpands(self, rs: RewriteSystem) -> bool:
        """Every identity holds exactly in the algebra."""
        gens = rs.gens
        for ident in self.identities:
            rhs = sum((t.as_poly(gens) for t in ident.terms), NCPoly.zero())
            if rs.normal_form(ident.lhs(gens)) != rs.normal_form(rhs):
                return False
        return True

    def nonzero(self) -> list:
        return [i for i in self.identities if i.terms]


def _decompose(w, gens, na, nb):
    a_word = []
    b_word = []
    c = ONE
    for k, g in enumerate(w):
        name = gens[g]
        if g < na and not b_word:
            a_word.append(name)
        elif na <= g < na + nb:
            b_word.append(name)
        elif g >= na + nb and k == len(w) - 1:
            c = name
        else:
            return None
    return tuple(a_word), tuple(b_word), c


def extract_structure(split: GeneratorSplit, rs: RewriteSystem | None = None) -> StructureData:
    """Write [a,b], [b,b], [a,c], [b,c] and c*c as sums of f(a) g(b) c_k."""
    if rs is None:
        rs = split.rewrite_system()
    gens = rs.gens
    na, nb = len(split.a), len(split.b)
    if tuple(gens) != split.a + split.b + split.c_generators:
        raise FormExtractionFailed("rewrite system generators are not in a|b|c block order")
    fd = split.fdeg
    pairs = []
    for x in split.a:
        for y in split.b:
            pairs.append((1, x, y, fd[y] - 1))
    for x, y in combinations(split.b, 2):
        pairs.append((2, x, y, fd[x] + fd[y] - 1))
    for x in split.a:
        for y in split.c:
            pairs.append((3, x, y, fd[y] - 1))
    for x in split.b:
        for y in split.c:
            pairs.append((4, x, y, fd[x] + fd[y] - 1))
    for x in split.c:
        for y in split.c:
            pairs.append((5, x, y, fd[x] + fd[y]))
    out = []
    for kind, x, y, bound in pairs:
        u, v = _gen_poly(x, gens), _gen_poly(y, gens)
        lhs = u * v if kind == 5 else u * v - v * u
        nf = rs.normal_form(lhs)
        terms = []
        for w, coef in nf.sorted_terms(rs.order):
            parts = _decompose(w, gens, na, nb)
            if parts is None:
                raise FormExtractionFailed(
                    f"{KIND_NAMES[kind]} for ({x}, {y}) has normal word "
                    f"{'*'.join(gens[g] for g in w)} outside the f(a) g(b) c shape")
            terms.append(Term(coef, *parts))
        out.append(Identity(kind, x, y, tuple(terms), bound))
    return StructureData(split, tuple(out))


@dataclass(frozen=True)
class Exponents:
    e0: int
    e1: int
    e2: int

    def as_tuple(self):
        return (self.e0, self.e1, self.e2)


def compute_exponents(sd: StructureData | None) -> Exponents:
    """e0 = largest a-degree of any f-coefficient (0 if none)."""
    e0 = 0
    if sd is not None:
        for ident in sd.identities:
            e0 = max(e0, ident.max_a_degree())
    e1 = e0 + 1
    return Exponents(e0, e1, e0 + e1 + 1)


def build_G(split: GeneratorSplit, e: Exponents) -> Filtration:
    """New degrees: a -> 1, b -> e2 * deg^F, c -> e2 * deg^F + e1."""
    degs = []
    for g in split.presentation.gens:
        if g in split.a:
            degs.append(1)
        elif g in split.b:
            degs.append(e.e2 * split.fdeg[g])
        else:
            degs.append(e.e2 * split.fdeg[g] + e.e1)
    return Filtration(split.presentation, tuple(degs))


def formal_G_degree(name: str, split: GeneratorSplit, e: Exponents) -> int:
    """deg^G of the free variable standing for ``name`` (identity included)."""
    if name in split.a:
        return 1
    if name in split.b:
        return e.e2 * split.fdeg[name]
    return e.e2 * split.fdeg[name] + e.e1


@dataclass
class PairCheck:
    left: str
    right: str
    degree: object
    bound: int

    @property
    def ok(self) -> bool:
        return self.degree <= self.bound


@dataclass
class CommutativityReport:
    cap: int
    weights: dict
    gr0_dim: int
    pairs: list = field(default_factory=list)

    @property
    def connected(self) -> bool:
        return self.gr0_dim == 1

    @property
    def commutative(self) -> bool:
        return all(p.ok for p in self.pairs)

    @property
    def passed(self) -> bool:
        return self.connected and self.commutative

    def failures(self) -> list:
        return [p for p in self.pairs if not p.ok]


def verify_commutative_connected(pres: Presentation, g: Filtration, cap: int = 8,
                                 strict: bool = True) -> CommutativityReport:
    """Check gr^G is connected and commutative, degree by degree up to cap.

    Connected: only the empty word has G-weight 0.  Commutative: for
    every generator pair, deg^G([u, v]) <= deg^G(u) + deg^G(v) - 1.
    """
    p = pres.with_degrees(g.degrees)
    rs = complete_to_cap(p, MonomialOrder(g.degrees), cap)
    if not rs.complete:
        raise CapExceeded(f"completion under G is not closed below cap {cap}", cap=cap)
    words = rs.normal_words(cap)
    gr0 = sum(1 for w in words if rs.order.weight(w) == 0)
    report = CommutativityReport(cap, dict(zip(p.gens, g.degrees)), gr0)
    for i, j in combinations(range(p.ngens), 2):
        com = rs.commutator(NCPoly.gen(i), NCPoly.gen(j))
        deg = weighted_degree(com, g.degrees)
        report.pairs.append(PairCheck(p.gens[i], p.gens[j], deg,
                                      g.degrees[i] + g.degrees[j] - 1))
    if strict and not report.passed:
        if not report.connected:
            msg = f"gr^G_0 has dimension {gr0} (truncated at cap {cap}), not 1"
        else:
            bad = report.failures()[0]
            msg = (f"deg^G([{bad.left}, {bad.right}]) = {bad.degree} exceeds "
                   f"{bad.bound}")
        raise VerificationFailed(msg, report)
    return report


@dataclass
class GDegreeCheck:
    identity: Identity
    degree: object
    bound: int

    @property
    def ok(self) -> bool:
        return self.degree <= self.bound


def g_degree_checks(sd: StructureData, e: Exponents, G: Filtration) -> list:
    """deg^G of every recorded left-hand side against the product bound.

    Commutators must drop by one below the sum of the formal degrees of
    their entries ([a, b] by two); the products c_i c_j must drop by one.
    """
    rs = complete_to_cap(G.weighted(), MonomialOrder(G.degrees), sd.split.cap)
    out = []
    for ident in sd.identities:
        lhs = rs.normal_form(ident.lhs(rs.gens))
        deg = weighted_degree(lhs, G.degrees)
        drop = 2 if ident.kind == 1 else 1
        bound = (formal_G_degree(ident.left, sd.split, e)
                 + formal_G_degree(ident.right, sd.split, e) - drop)
        out.append(GDegreeCheck(ident, deg, bound))
    return out


@dataclass
class TwoFiltResult:
    split: GeneratorSplit
    structure: StructureData
    exponents: Exponents
    G: Filtration
    report: CommutativityReport
    g_checks: list

    @property
    def passed(self) -> bool:
        return (self.report.passed and self.structure.bounds_hold()
                and all(c.ok for c in self.g_checks))


def run_twofilt(pres: Presentation, f: Filtration | None = None, cap: int = 8,
                split: GeneratorSplit | None = None) -> TwoFiltResult:
    if split is None:
        split = derive_split(pres, f, cap=cap)
    rs = split.rewrite_system()
    sd = extract_structure(split, rs)
    e = compute_exponents(sd)
    G = build_G(split, e)
    report = verify_commutative_connected(split.presentation, G, cap, strict=False)
    return TwoFiltResult(split, sd, e, G, report, g_degree_checks(sd, e, G))
