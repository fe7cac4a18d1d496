"""Builders for Weyl algebras, enveloping algebras, skew extensions and
tensor constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .filtration import Filtration
from .ncalg import (
    AlgebraError,
    NCPoly,
    Presentation,
    complete_to_cap,
)


class InvalidLieData(AlgebraError):
    pass


class TwistNotHomomorphism(AlgebraError):
    pass


def commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q - q * p


def weyl(n: int):
    """n-th Weyl algebra with its order and Bernstein filtrations.

    Generators are x1..xn, y1..yn with [y_i, x_i] = 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        gens = ("x", "y")
    else:
        gens = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(
            f"y{i}" for i in range(1, n + 1))
    X = [NCPoly.gen(i) for i in range(n)]
    Y = [NCPoly.gen(n + i) for i in range(n)]
    rels = []
    for i, j in combinations(range(n), 2):
        rels.append(commutator(X[j], X[i]))
        rels.append(commutator(Y[j], Y[i]))
    for i in range(n):
        for j in range(n):
            if i != j:
                rels.append(commutator(Y[i], X[j]))
    for i in range(n):
        rels.append(commutator(Y[i], X[i]) - 1)
    order_degs = (0,) * n + (1,) * n
    pres = Presentation(gens, order_degs, tuple(rels), (), f"A{n}")
    return pres, Filtration(pres, order_degs), Filtration(pres, (1,) * (2 * n))


@dataclass(frozen=True)
class LieData:
    """Structure constants ``brackets[(i, j)] = {k: c}`` meaning
    [x_i, x_j] = sum_k c x_k.  Missing pairs bracket to zero."""

    names: tuple
    brackets: Mapping = field(default_factory=dict)

    def bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if (i, j) in self.brackets:
            return {k: Fraction(c) for k, c in self.brackets[(i, j)].items() if c}
        if (j, i) in self.brackets:
            return {k: -Fraction(c) for k, c in self.brackets[(j, i)].items() if c}
        return {}

    def check(self):
        n = len(self.names)
        for (i, j), v in self.brackets.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in v):
                raise InvalidLieData("structure constant index out of range")
            if i == j and any(v.values()):
                raise InvalidLieData(f"[{self.names[i]}, {self.names[i]}] must vanish")
            if (j, i) in self.brackets and i < j:
                other = self.brackets[(j, i)]
                keys = set(v) | set(other)
                if any(Fraction(v.get(k, 0)) != -Fraction(other.get(k, 0)) for k in keys):
                    raise InvalidLieData(
                        f"antisymmetry fails for ({self.names[i]}, {self.names[j]})")
        for i, j, k in combinations(range(n), 3):
            if _jacobiator(self, i, j, k):
                raise InvalidLieData(
                    f"Jacobi identity fails on ({self.names[i]}, {self.names[j]}, "
                    f"{self.names[k]})")


def _bracket_vec(data: LieData, u: dict, v: dict) -> dict:
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in data.bracket(i, j).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c}


def _jacobiator(data, i, j, k) -> dict:
    e = lambda m: {m: Fraction(1)}
    total: dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for key, val in _bracket_vec(data, _bracket_vec(data, e(a), e(b)), e(c)).items():
            total[key] = total.get(key, 0) + val
    return {k2: v for k2, v in total.items() if v}


def sl2() -> LieData:
    # e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return LieData(("e", "f", "h"), {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}})


def u_lie(data: LieData):
    """Universal enveloping algebra, all generators in degree 1."""
    data.check()
    n = len(data.names)
    rels = []
    for i, j in combinations(range(n), 2):
        rhs = NCPoly({(k,): c for k, c in data.bracket(i, j).items()})
        rels.append(commutator(NCPoly.gen(i), NCPoly.gen(j)) - rhs)
    pres = Presentation(tuple(data.names), (1,) * n, tuple(rels), (), "U")
    return pres, Filtration.of(pres)


@dataclass(frozen=True)
class AlgebroidData:
    """Presentation data for U(C; L).

    ``base`` presents the commutative algebra C (its own commutation
    relations must be included).  ``l_names`` are C-module generators of L.
    ``anchor[(i, j)]`` is f_ij, the polynomial in the base generators
    giving alpha(l_i)(c_j); ``bracket[(i, j)][k]`` is g_ijk with
    [l_i, l_j] = sum_k g_ijk l_k.  ``module_relations`` are C-linear
    relations among the l's, each a dict ``{k: polynomial in C}``.
    """

    base: Presentation
    l_names: tuple
    anchor: Mapping = field(default_factory=dict)
    bracket: Mapping = field(default_factory=dict)
    module_relations: tuple = ()


def u_lie_algebroid(data: AlgebroidData, cap: int = 8):
    """Enveloping algebra of a Lie algebroid: base generators in degree 0,
    L-generators in degree 1."""
    C = data.base
    p, q = C.ngens, len(data.l_names)
    names = C.gens + tuple(data.l_names)
    if len(set(names)) != len(names):
        raise InvalidLieData("base and L generator names overlap")
    X = [NCPoly.gen(i) for i in range(p)]
    Y = [NCPoly.gen(p + i) for i in range(q)]

    def base_poly(f) -> NCPoly:
        f = NCPoly.coerce(f)
        if any(g >= p for g in f.generators_used()):
            raise InvalidLieData("anchor/bracket coefficients must lie in C")
        return f

    for (i, j), v in data.bracket.items():
        if i == j and any(not NCPoly.coerce(c).is_zero() for c in v.values()):
            raise InvalidLieData("[l_i, l_i] must vanish")
        if (j, i) in data.bracket and i < j:
            other = data.bracket[(j, i)]
            for k in set(v) | set(other):
                if not (NCPoly.coerce(v.get(k, 0)) + NCPoly.coerce(other.get(k, 0))).is_zero():
                    raise InvalidLieData("bracket table is not antisymmetric")

    rels = list(C.all_relations())
    for rel in data.module_relations:
        rels.append(sum((base_poly(c) * Y[k] for k, c in rel.items()), NCPoly.zero()))
    for i in range(q):
        for j in range(p):
            f = base_poly(data.anchor.get((i, j), 0))
            rels.append(commutator(Y[i], X[j]) - f)
    for i, j in combinations(range(q), 2):
        if (i, j) in data.bracket:
            g = {k: base_poly(c) for k, c in data.bracket[(i, j)].items()}
        elif (j, i) in data.bracket:
            g = {k: -base_poly(c) for k, c in data.bracket[(j, i)].items()}
        else:
            g = {}
        rhs = sum((c * Y[k] for k, c in g.items()), NCPoly.zero())
        rels.append(commutator(Y[i], Y[j]) - rhs)
    rels = [r for r in rels if not r.is_zero()]
    pres = Presentation(names, (0,) * p + (1,) * q, tuple(rels), (), "U_CL")
    _check_algebroid_jacobi(pres, data, cap)
    return pres, Filtration.of(pres)


def _check_algebroid_jacobi(pres: Presentation, data: AlgebroidData, cap: int):
    # Jacobi on the l-generators and compatibility of the anchor, tested
    # in the presented algebra: [[y_i, y_j], x_k] must equal the anchor of
    # the bracket, which holds iff the rewrite system stays consistent.
    rs = complete_to_cap(pres, cap=cap)
    p = data.base.ngens
    q = len(data.l_names)
    Y = [NCPoly.gen(p + i) for i in range(q)]
    for i, j, k in combinations(range(q), 3):
        jac = (commutator(commutator(Y[i], Y[j]), Y[k])
               + commutator(commutator(Y[j], Y[k]), Y[i])
               + commutator(commutator(Y[k], Y[i]), Y[j]))
        if not rs.normal_form(jac).is_zero():
            raise InvalidLieData("Jacobi identity fails on the L generators")
    # the algebra must not collapse C: every base generator stays normal
    for j in range(pres.ngens):
        if not rs.is_normal((j,)):
            raise InvalidLieData("anchor data is inconsistent: a generator collapses")


def skew_poly(base: Presentation, twist: Mapping[str, NCPoly], name: str = "a",
              degree: int = 0, cap: int = 8) -> Presentation:
    """Ore extension base[a; sigma] with a*c = sigma(c)*a.

    ``twist`` maps base generator names to polynomials in the base.
    """
    n = base.ngens
    if name in base.gens:
        raise ValueError(f"generator name {name!r} already used")
    images = {}
    for g in base.gens:
        img = NCPoly.coerce(twist.get(g, NCPoly.gen(base.index(g))))
        if any(h >= n for h in img.generators_used()):
            raise TwistNotHomomorphism("twist images must lie in the base algebra")
        images[base.index(g)] = img
    rs = complete_to_cap(base, cap=cap)
    for r in base.all_relations():
        if not rs.normal_form(r.substitute(images)).is_zero():
            raise TwistNotHomomorphism(
                f"twist does not preserve relation {base.fmt(r)}")
    a = NCPoly.gen(n)
    rels = list(base.relations)
    for i in range(n):
        rels.append(a * NCPoly.gen(i) - images[i] * a)
    return Presentation(base.gens + (name,), base.degrees + (degree,), tuple(rels),
                        base.central, f"{base.name}_skew")


def _as_pair(x):
    if isinstance(x, Filtration):
        return x.presentation, x.degrees
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], Filtration):
        return x[0], x[1].degrees
    return x, x.degrees


def tensor(p1, p2, suffix: str = "'"):
    """Tensor product over k; factor-2 names clashing with factor 1 get
    ``suffix`` appended.  Degrees add (F_n = sum F_l x F_m)."""
    A, d1 = _as_pair(p1)
    B, d2 = _as_pair(p2)
    names2 = []
    taken = set(A.gens)
    for g in B.gens:
        h = g
        while h in taken:
            h += suffix
        taken.add(h)
        names2.append(h)
    n1 = A.ngens
    shift = {i: n1 + i for i in range(B.ngens)}
    rels = list(A.relations) + [r.relabel(shift) for r in B.relations]
    for u in range(n1):
        for v in range(B.ngens):
            rels.append(commutator(NCPoly.gen(n1 + v), NCPoly.gen(u)))
    central = A.central + tuple(names2[B.index(c)] for c in B.central)
    pres = Presentation(A.gens + tuple(names2), tuple(d1) + tuple(d2), tuple(rels),
                        central, f"{A.name}_x_{B.name}")
    return pres, Filtration.of(pres)


def opposite(p: Presentation) -> Presentation:
    """Opposite algebra: every relation word reversed."""
    name = p.name[:-3] if p.name.endswith("_op") else p.name + "_op"
    return Presentation(p.gens, p.degrees, tuple(r.reverse() for r in p.relations),
                        p.central, name)


def enveloping(p: Presentation):
    """A (x) A^op with primed names on the second factor."""
    pres, f = tensor(p, opposite(p), suffix="'")
    return pres.renamed(f"{p.name}_e"), f


def polynomial_ring(names: Sequence[str], degrees: Sequence[int] | None = None,
                    name: str = "P") -> Presentation:
    """Commutative polynomial ring as a presentation."""
    n = len(names)
    degrees = tuple(degrees) if degrees is not None else (1,) * n
    rels = [commutator(NCPoly.gen(j), NCPoly.gen(i)) for i, j in combinations(range(n), 2)]
    return Presentation(tuple(names), degrees, tuple(rels), (), name)


def trivial_algebra() -> Presentation:
    """The ground field k, no generators."""
    return Presentation((), (), (), (), "k")
