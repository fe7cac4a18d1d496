"""Generator-degree filtrations, associated graded and Rees algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .ncalg import (
    NEG_INF,
    AlgebraError,
    CapExceeded,
    MonomialOrder,
    NCPoly,
    Presentation,
    RewriteSystem,
    complete_to_cap,
    top_form,
    weighted_degree,
)


class MissingReesGenerator(AlgebraError):
    """The presentation has no central degree-1 generator to specialize."""


@dataclass(frozen=True)
class Filtration:
    """Filtration on ``presentation`` induced by generator degrees.

    F_d A is spanned by the images of words whose degree sum is <= d.
    """

    presentation: Presentation
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.degrees) != self.presentation.ngens:
            raise ValueError("one degree per generator required")
        if any(d < 0 for d in self.degrees):
            raise ValueError("filtration degrees must be nonnegative")

    @classmethod
    def of(cls, pres: Presentation) -> "Filtration":
        return cls(pres, pres.degrees)

    def weighted(self) -> Presentation:
        """The presentation carrying these degrees."""
        return self.presentation.with_degrees(self.degrees)

    def order(self) -> MonomialOrder:
        return MonomialOrder(self.degrees)

    def complete(self, cap: int) -> RewriteSystem:
        return complete_to_cap(self.weighted(), self.order(), cap)

    def as_dict(self) -> dict:
        return dict(zip(self.presentation.gens, self.degrees))


@dataclass(frozen=True)
class GradedDims:
    """Per-degree dimensions ``dims[0..cap]``."""

    dims: tuple
    cap: int

    def __getitem__(self, i):
        return self.dims[i]

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def cumulative(self) -> tuple:
        out, s = [], 0
        for d in self.dims:
            s += d
            out.append(s)
        return tuple(out)


@dataclass(frozen=True)
class BigradedDims:
    """Dimensions indexed by (filtration degree, t-degree) in a box."""

    entries: Mapping
    box: int

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.box + 1)] for i in range(self.box + 1)]


def _require_weights(f: Filtration, rs: RewriteSystem):
    if tuple(rs.order.weights) != f.degrees or not rs.order.use_weights:
        raise ValueError("rewrite system must be ordered by the filtration degrees")


def deg_and_symbol(p: NCPoly, f: Filtration, rs: RewriteSystem):
    """F-degree and F-symbol of ``p``, read off its normal form."""
    _require_weights(f, rs)
    q = rs.normal_form(p)
    return weighted_degree(q, f.degrees), top_form(q, f.degrees)


def deg_F(p: NCPoly, f: Filtration, rs: RewriteSystem):
    return deg_and_symbol(p, f, rs)[0]


def gr_presentation(pres: Presentation, f: Filtration, rs: RewriteSystem) -> Presentation:
    """Presentation of gr^F A by the top-weight forms of the rules."""
    _require_weights(f, rs)
    if not rs.complete:
        raise CapExceeded("rewrite system is not complete to its cap", cap=rs.cap)
    rels = []
    for lead, tail in rs.rules:
        rel = NCPoly.word(lead) - tail
        rels.append(top_form(rel, f.degrees))
    return Presentation(pres.gens, f.degrees, tuple(rels), (), f"gr_{pres.name}")


def count_by_weight(words, order: MonomialOrder, weights: Sequence[int], top: int) -> list:
    dims = [0] * (top + 1)
    for w in words:
        d = sum(weights[g] for g in w)
        if d <= top:
            dims[d] += 1
    return dims


def gr_dims(pres: Presentation, f: Filtration | None = None, cap: int = 8,
            rs: RewriteSystem | None = None) -> GradedDims:
    """Number of normal words of each F-weight, words truncated at ``cap``.

    Generators of degree 0 count 1 towards the cap, so for filtrations
    with degree-0 generators the entries are truncations.
    """
    if f is None:
        f = Filtration.of(pres)
    if rs is None:
        rs = complete_to_cap(pres.with_degrees(f.degrees), f.order(), cap)
    if not rs.complete:
        raise CapExceeded("completion did not close below the cap", cap=cap)
    return GradedDims(tuple(count_by_weight(rs.normal_words(cap), rs.order,
                                            f.degrees, cap)), cap)


def fresh_name(taken, base: str = "t") -> str:
    if base not in taken:
        return base
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def homogenize(r: NCPoly, weights: Sequence[int], t: int) -> NCPoly:
    """Multiply each term on the right by t to the missing weight."""
    d = weighted_degree(r, weights)
    if d == NEG_INF:
        return r
    out = {}
    for w, c in r.items():
        gap = d - sum(weights[g] for g in w)
        out[w + (t,) * gap] = c
    return NCPoly(out)


def rees_presentation(pres: Presentation, f: Filtration | None = None,
                      t_name: str | None = None) -> Presentation:
    """Rees algebra: adjoin a central degree-1 ``t`` and homogenize."""
    if f is None:
        f = Filtration.of(pres)
    t_name = t_name or fresh_name(pres.gens)
    t = pres.ngens
    rels = tuple(homogenize(r, f.degrees, t) for r in pres.relations)
    return Presentation(pres.gens + (t_name,), f.degrees + (1,), rels,
                        pres.central + (t_name,), f"Rees_{pres.name}")


def rees_generator(pres: Presentation, name: str | None = None) -> str:
    if name is not None:
        if name not in pres.gens or name not in pres.central:
            raise MissingReesGenerator(f"{name!r} is not a central generator")
        if pres.degrees[pres.index(name)] != 1:
            raise MissingReesGenerator(f"{name!r} does not have degree 1")
        return name
    for c in reversed(pres.central):
        if pres.degrees[pres.index(c)] == 1:
            return c
    raise MissingReesGenerator("no central generator of degree 1")


def specialize(pres: Presentation, lam: int, t_name: str | None = None) -> Presentation:
    """Set the Rees generator to ``lam`` (0 or 1) and drop it."""
    if lam not in (0, 1):
        raise ValueError("only specializations at 0 and 1 are supported")
    t_name = rees_generator(pres, t_name)
    t = pres.index(t_name)
    keep = [i for i in range(pres.ngens) if i != t]
    relabel = {old: new for new, old in enumerate(keep)}
    rels = []
    for r in pres.relations:
        s = r.substitute({t: NCPoly.const(lam)})
        if not s.is_zero():
            rels.append(s.relabel(relabel))
    name = pres.name[5:] if pres.name.startswith("Rees_") else pres.name
    if lam == 0:
        name = f"gr_{name}"
    return Presentation(tuple(pres.gens[i] for i in keep),
                        tuple(pres.degrees[i] for i in keep), tuple(rels),
                        tuple(c for c in pres.central if c != t_name), name)


def lift_rees_filtration_dims(pres: Presentation, f: Filtration | None = None,
                              cap: int = 8, box: int | None = None) -> BigradedDims:
    """dim gr^{F~}_i of the Rees algebra in t-degree j.

    Uses the decomposition F~_i = sum_j F_min(i,j) A t^j: the (i, j) piece
    is gr^F_i A when j >= i and zero otherwise.
    """
    box = cap if box is None else box
    dims = gr_dims(pres, f, cap)
    entries = {}
    for i in range(box + 1):
        for j in range(i, box + 1):
            if dims[i]:
                entries[(i, j)] = dims[i]
    return BigradedDims(entries, box)


def filtration_from_symbols(pres: Presentation, f: Filtration, rs: RewriteSystem) -> tuple:
    """Recover generator degrees as max(0, deg^F(a_i))."""
    out = []
    for i in range(pres.ngens):
        d = deg_F(NCPoly.gen(i), f, rs)
        out.append(max(0, d) if d != NEG_INF else 0)
    return tuple(int(d) for d in out)
