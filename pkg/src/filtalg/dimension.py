"""Finite left modules over presented algebras, GK and canonical dimension.

A module is ``A^r / (sum of A * row)`` with generator weights.  Elements
are dicts ``(word, position) -> Fraction`` meaning sum c * word * e_pos.
Normal forms use the algebra rules plus module rules whose leads are
matched as suffixes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import commalg
from .filtration import Filtration, GradedDims
from .ncalg import (
    CAP_EXCEEDED,
    COMPLETE,
    NEG_INF,
    AlgebraError,
    CapExceeded,
    MonomialOrder,
    NCPoly,
    Presentation,
    RewriteSystem,
    complete_to_cap,
    format_poly,
    format_word,
)


class HypothesisNotCertified(AlgebraError):
    pass


@dataclass(frozen=True)
class ModulePresentation:
    """Left module A^rank / A-span of the relation rows."""

    algebra: Presentation
    rank: int = 1
    relations: tuple = ()
    weights: tuple | None = None
    name: str = "M"

    def __post_init__(self):
        rows = []
        for row in self.relations:
            row = tuple(NCPoly.coerce(p) for p in row)
            if len(row) != self.rank:
                raise ValueError("relation row length must equal the module rank")
            rows.append(row)
        object.__setattr__(self, "relations", tuple(rows))
        w = self.weights if self.weights is not None else (0,) * self.rank
        w = tuple(int(x) for x in w)
        if len(w) != self.rank or any(x < 0 for x in w):
            raise ValueError("one nonnegative weight per module generator")
        object.__setattr__(self, "weights", w)

    @classmethod
    def cyclic(cls, algebra: Presentation, relations: Sequence = (), name: str = "M"):
        """A / (sum of A * r): ``relations`` are polynomials or DSL strings."""
        rows = []
        for r in relations:
            if isinstance(r, str):
                r = algebra.poly(r)
            rows.append((NCPoly.coerce(r),))
        return cls(algebra, 1, tuple(rows), (0,), name)

    @classmethod
    def zero(cls, algebra: Presentation) -> "ModulePresentation":
        return cls.cyclic(algebra, [NCPoly.one()], "0")

    def shifted(self, k: int) -> "ModulePresentation":
        return ModulePresentation(self.algebra, self.rank, self.relations,
                                  tuple(w + k for w in self.weights), self.name)

    def with_algebra_degrees(self, degrees) -> "ModulePresentation":
        return ModulePresentation(self.algebra.with_degrees(degrees), self.rank,
                                  self.relations, self.weights, self.name)

    def row_elements(self) -> list:
        out = []
        for row in self.relations:
            v = {}
            for pos, p in enumerate(row):
                for w, c in p.items():
                    v[(w, pos)] = c
            out.append(v)
        return out


class ModuleOrder:
    """Algebra order shifted by generator weights, position last."""

    def __init__(self, order: MonomialOrder, weights: Sequence[int]):
        self.order = order
        self.weights = tuple(weights)

    def key(self, term):
        w, pos = term
        k = self.order.key(w)
        return (k[0] + (self.weights[pos] if self.order.use_weights else 0), k[1], k[2], pos)

    def size(self, term) -> int:
        w, pos = term
        return self.order.size(w) + self.weights[pos]

    def lead(self, v: Mapping):
        return max(v, key=self.key)


def _acc(out: dict, key, c):
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class ModuleRewriteSystem:
    """Algebra rules plus module rules ``(word, pos) -> element``."""

    def __init__(self, rs: RewriteSystem, mrules: Mapping, weights: Sequence[int],
                 cap: int, status: str = COMPLETE):
        self.rs = rs
        self.order = ModuleOrder(rs.order, weights)
        self.rules = dict(mrules)
        self.cap = cap
        self.status = status
        self.rank = len(weights)
        self._lengths = sorted({len(w) for w, _ in self.rules})

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE and self.rs.complete

    def module_redex(self, term):
        w, pos = term
        for m in self._lengths:
            if m > len(w):
                break
            lead = (w[len(w) - m:], pos)
            if lead in self.rules:
                return lead
        return None

    def reduce(self, v: Mapping) -> dict:
        order = self.order
        rs = self.rs

        def hkey(t):
            k = order.key(t)
            return (-k[0], -k[1], tuple(-g for g in k[2]), -k[3])

        work = {}
        heap = []
        for t, c in v.items():
            if c:
                work[t] = Fraction(c)
                heapq.heappush(heap, (hkey(t), t))
        result: dict = {}

        def push(t, c):
            if t in work:
                _acc(work, t, c)
            else:
                work[t] = c
                heapq.heappush(heap, (hkey(t), t))

        while heap:
            _, t = heapq.heappop(heap)
            c = work.pop(t, None)
            if not c:
                continue
            w, pos = t
            if not rs.is_normal(w):
                for u, d in rs.reduce_word(w, check_cap=False).items():
                    push((u, pos), c * d)
                continue
            lead = self.module_redex(t)
            if lead is None:
                _acc(result, t, c)
                continue
            prefix = w[:len(w) - len(lead[0])]
            for (u, j), d in self.rules[lead].items():
                push((prefix + u, j), c * d)
        return result

    def normal_terms(self, max_size: int | None = None) -> list:
        """Module normal words (word, pos) of size <= ``max_size``."""
        if max_size is None:
            max_size = self.cap
        out = []
        for pos in range(self.rank):
            room = max_size - self.order.weights[pos]
            if room < 0:
                continue
            for w in self.rs.normal_words(room):
                if self.module_redex((w, pos)) is None:
                    out.append((w, pos))
        out.sort(key=self.order.key)
        return out

    def fmt(self, v: Mapping, gen_names: Sequence[str] | None = None) -> str:
        return format_element(v, self.rs.gens, gen_names or default_gen_names(self.rank))


def default_gen_names(rank: int) -> tuple:
    return ("e",) if rank == 1 else tuple(f"e{i + 1}" for i in range(rank))


def format_element(v: Mapping, names, gen_names) -> str:
    if not v:
        return "0"
    parts = []
    for pos in sorted({p for _, p in v}):
        p = NCPoly({w: c for (w, q), c in v.items() if q == pos})
        body = format_poly(p, names)
        g = gen_names[pos]
        if body == "1":
            parts.append(g)
        elif body == "-1":
            parts.append(f"-{g}")
        elif len(p) == 1 and () not in p.words() and not body.startswith("-"):
            parts.append(f"{body}*{g}")
        else:
            parts.append(f"({body})*{g}")
    return " + ".join(parts)


def _monic(v: dict, order: ModuleOrder):
    lead = order.lead(v)
    c = v[lead]
    tail = {t: -d / c for t, d in v.items() if t != lead}
    return lead, tail


def _left_mul(word, v: Mapping) -> dict:
    return {(word + w, pos): c for (w, pos), c in v.items()}


def complete_module(m: ModulePresentation, cap: int = 8,
                    rs: RewriteSystem | None = None) -> ModuleRewriteSystem:
    """Capped completion of the module relations against the algebra rules."""
    if rs is None:
        rs = complete_to_cap(m.algebra, cap=cap)
    order = ModuleOrder(rs.order, m.weights)
    rules: dict = {}
    status = COMPLETE
    pairs: list = []
    seen: set = set()
    alg_leads = [l for l, _ in rs.rules]
    current = [None]

    def system():
        if current[0] is None:
            current[0] = ModuleRewriteSystem(rs, rules, m.weights, cap)
        return current[0]

    def push_pairs(lead):
        v, pos = lead
        # module lead against module lead: one is a suffix of the other
        for other in list(rules):
            if other == lead or other[1] != pos:
                continue
            for big, small in ((lead, other), (other, lead)):
                if len(big[0]) > len(small[0]) and big[0][len(big[0]) - len(small[0]):] == small[0]:
                    key = ("mm", big, small)
                    if key not in seen:
                        seen.add(key)
                        heapq.heappush(pairs, (order.key(big), key))
        # algebra lead L = p*s with s a prefix of v
        for L in alg_leads:
            for k in range(1, min(len(L), len(v)) + 1):
                if k == len(L):
                    break
                if L[len(L) - k:] == v[:k]:
                    word = L + v[k:]
                    t = (word, pos)
                    if order.size(t) > cap:
                        continue
                    key = ("am", L, lead, k)
                    if key not in seen:
                        seen.add(key)
                        heapq.heappush(pairs, (order.key(t), key))

    def add(v: dict):
        nonlocal status
        queue = [v]
        while queue:
            q = system().reduce(queue.pop())
            if not q:
                continue
            lead, tail = _monic(q, order)
            if order.size(lead) > cap:
                status = CAP_EXCEEDED
            for old in [o for o in rules if o[1] == lead[1]
                        and o[0][len(o[0]) - len(lead[0]):] == lead[0]
                        and len(o[0]) >= len(lead[0])]:
                t = rules.pop(old)
                e = dict(t)
                e = {k: -c for k, c in e.items()}
                _acc(e, old, Fraction(1))
                queue.append(e)
            rules[lead] = tail
            current[0] = None
            push_pairs(lead)

    for row in sorted(m.row_elements(), key=lambda v: order.key(order.lead(v)) if v else ()):
        if row:
            add(row)
    while pairs:
        _, key = heapq.heappop(pairs)
        if key[0] == "mm":
            _, big, small = key
            if big not in rules or small not in rules:
                continue
            prefix = big[0][:len(big[0]) - len(small[0])]
            s = dict(rules[big])
            for t, c in _left_mul(prefix, rules[small]).items():
                _acc(s, t, -c)
        else:
            _, L, lead, k = key
            if lead not in rules:
                continue
            v, pos = lead
            via_alg = {(w + v[k:], pos): c for w, c in rs._rule_map[L].items()}
            via_mod = _left_mul(L[:len(L) - k], rules[lead])
            s = dict(via_alg)
            for t, c in via_mod.items():
                _acc(s, t, -c)
        s = system().reduce(s)
        if s:
            add(s)
    final = {}
    tmp = ModuleRewriteSystem(rs, rules, m.weights, cap)
    for lead, tail in rules.items():
        final[lead] = tmp.reduce(tail)
    if not rs.complete:
        status = CAP_EXCEEDED
    return ModuleRewriteSystem(rs, final, m.weights, cap, status)


def module_filtration_dims(m: ModulePresentation, cap: int = 8,
                           mrs: ModuleRewriteSystem | None = None) -> GradedDims:
    """dims[i] = number of module normal words of filtration degree i.

    Degree-0 algebra generators count 1 towards the cap, so their
    contributions are truncated in the same way as for algebras.
    """
    if mrs is None:
        mrs = complete_module(m, cap)
    if not mrs.complete:
        raise CapExceeded("module completion did not close below the cap", cap=cap)
    dims = [0] * (cap + 1)
    for w, pos in mrs.normal_terms(cap):
        d = mrs.rs.order.weight(w) + m.weights[pos]
        if d <= cap:
            dims[d] += 1
    return GradedDims(tuple(dims), cap)


def standard_degrees(pres: Presentation) -> tuple:
    """Degrees max(1, d): a finite-dimensional generating filtration."""
    return tuple(max(1, d) for d in pres.degrees)


def gkdim_module(m: ModulePresentation, cap: int = 8):
    """Growth degree of the module dimensions under positive degrees."""
    m1 = m.with_algebra_degrees(standard_degrees(m.algebra))
    dims = module_filtration_dims(m1, cap)
    return commalg.growth_degree(dims.dims)


@dataclass(frozen=True)
class FilteredCdim:
    value: object
    hypothesis: str
    evidence: tuple = ()


def differential_evidence(pres: Presentation, cap: int = 8) -> tuple:
    """Certificate that the generator filtration is differential of finite type."""
    from .twofilt import FormExtractionFailed, SplitNotFound, derive_split, extract_structure
    try:
        split = derive_split(pres, cap=cap)
        extract_structure(split)
    except (SplitNotFound, FormExtractionFailed, CapExceeded) as exc:
        raise HypothesisNotCertified(
            f"no differential finite-type certificate for {pres.name}: {exc}") from exc
    return (f"a = {', '.join(split.a) or '-'}; b = {', '.join(split.b) or '-'}",) + split.notes


def cdim_filtered(m: ModulePresentation, cap: int = 8) -> FilteredCdim:
    """Canonical dimension of a finite module, read as its GK dimension."""
    evidence = differential_evidence(m.algebra, cap)
    return FilteredCdim(gkdim_module(m, cap),
                        "base algebra differential of finite type (certified to cap)",
                        evidence)


def to_commutative(m: ModulePresentation, ring: commalg.PolyRing | None = None) -> commalg.CModule:
    """Same module over the commutative polynomial ring on the algebra generators.

    Only meaningful when the algebra is itself a polynomial ring.
    """
    pres = m.algebra
    if ring is None:
        ring = commalg.PolyRing(pres.gens)
    commalg_rows = []
    for row in m.relations:
        commalg_rows.append({(pos, e): c for pos, p in enumerate(row)
                             for e, c in commalg.from_ncpoly(p, ring).terms.items()})
    return commalg.CModule(ring, m.rank, tuple(commalg_rows), m.weights)


def is_commutative_polynomial_ring(pres: Presentation, cap: int = 8) -> bool:
    rs = complete_to_cap(pres, cap=cap)
    for i in range(pres.ngens):
        for j in range(i + 1, pres.ngens):
            if not rs.commutator(NCPoly.gen(i), NCPoly.gen(j)).is_zero():
                return False
    return rs.complete and len(rs.rules) == pres.ngens * (pres.ngens - 1) // 2
