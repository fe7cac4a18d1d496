"""Commutative backend over Q[t_1..t_n].

Polynomials are dicts ``exponent tuple -> Fraction``; module elements are
dicts ``(position, exponent tuple) -> Fraction``.  Groebner bases of
submodules of free modules drive ideal membership, Hilbert functions,
syzygies, free resolutions and Ext against the ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .filtration import GradedDims
from .ncalg import NEG_INF, AlgebraError


class InsufficientData(AlgebraError):
    pass


class NotFiniteOverAmbient(AlgebraError):
    pass


# -- monomials --------------------------------------------------------

def _add(e, f):
    return tuple(a + b for a, b in zip(e, f))


def _sub(e, f):
    return tuple(a - b for a, b in zip(e, f))


def _divides(e, f) -> bool:
    return all(a <= b for a, b in zip(e, f))


def _lcm(e, f):
    return tuple(max(a, b) for a, b in zip(e, f))


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return tuple(e)


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    order: str = "grevlex"

    @property
    def n(self) -> int:
        return len(self.names)

    def mono_key(self, e):
        return ORDERS[self.order](e)

    def var(self, name_or_index) -> "CPoly":
        i = name_or_index if isinstance(name_or_index, int) else self.names.index(name_or_index)
        e = [0] * self.n
        e[i] = 1
        return CPoly(self, {tuple(e): 1})

    def one(self) -> "CPoly":
        return CPoly(self, {(0,) * self.n: 1})

    def zero(self) -> "CPoly":
        return CPoly(self, {})

    def const(self, c) -> "CPoly":
        return CPoly(self, {(0,) * self.n: c})

    def parse(self, text: str) -> "CPoly":
        from .dsl import parse_poly
        p = parse_poly(text, self.names)
        return from_ncpoly(p, self)

    def monomials_of_degree(self, d: int):
        def rec(i, left):
            if i == self.n - 1:
                yield (left,)
                return
            for a in range(left, -1, -1):
                for rest in rec(i + 1, left - a):
                    yield (a,) + rest
        if self.n == 0:
            if d == 0:
                yield ()
            return
        yield from rec(0, d)


class CPoly:
    """Commutative polynomial with rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self.terms = {tuple(e): Fraction(c) for e, c in terms.items() if c}

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return CPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                g = _add(e, f)
                out[g] = out.get(g, 0) + a * b
        return CPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, x):
        if isinstance(x, CPoly):
            return x
        return self.ring.const(x)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, CPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def leading_monomial(self):
        return max(self.terms, key=self.ring.mono_key)

    def __repr__(self):
        return f"CPoly({format_cpoly(self)})"


def format_cpoly(p: CPoly) -> str:
    """Terms in decreasing monomial order, e.g. ``x^2*y - 3*z + 1``."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=p.ring.mono_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}"
                        for n, k in zip(p.ring.names, e) if k)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def to_ncpoly(p: CPoly):
    from .ncalg import NCPoly
    out = {}
    for e, c in p.terms.items():
        w = tuple(i for i, k in enumerate(e) for _ in range(k))
        out[w] = out.get(w, 0) + c
    return NCPoly(out)


def from_ncpoly(p, ring: PolyRing) -> CPoly:
    """Commutative image of a noncommutative polynomial."""
    out: dict = {}
    for w, c in p.items():
        e = [0] * ring.n
        for g in w:
            e[g] += 1
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return CPoly(ring, out)


# -- module vectors ---------------------------------------------------

def vec_from_polys(polys: Sequence[CPoly]) -> dict:
    out = {}
    for pos, p in enumerate(polys):
        for e, c in p.terms.items():
            out[(pos, e)] = c
    return out


def vec_to_polys(v: Mapping, rank: int, ring: PolyRing) -> list:
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos][e] = c
    return [CPoly(ring, t) for t in parts]


def _vadd_scaled(out: dict, v: Mapping, c: Fraction, shift=None):
    for (pos, e), a in v.items():
        key = (pos, _add(e, shift) if shift is not None else e)
        s = out.get(key, 0) + c * a
        if s:
            out[key] = s
        else:
            out.pop(key, None)


class ModuleOrder:
    """Term order on (position, monomial).

    ``top``: shifted degree, then monomial order, then position.
    With ``elim`` > 0, positions below ``elim`` dominate all others
    (used for syzygy computations).
    """

    def __init__(self, ring: PolyRing, shifts: Sequence[int] | None = None,
                 elim: int = 0):
        self.ring = ring
        self.shifts = tuple(shifts) if shifts is not None else None
        self.elim = elim

    def key(self, term):
        pos, e = term
        shift = self.shifts[pos] if self.shifts is not None and pos < len(self.shifts) else 0
        block = 1 if pos < self.elim else 0
        # lex is not degree-compatible, so the degree slot is dropped
        deg = sum(e) + shift if self.ring.order != "lex" else 0
        return (block, deg, self.ring.mono_key(e), -pos)

    def lead(self, v: Mapping):
        return max(v, key=self.key)


def _normalize(v: dict, order: ModuleOrder) -> dict:
    if not v:
        return v
    lt = order.lead(v)
    c = v[lt]
    return {k: a / c for k, a in v.items()}


def reduce_vec(v: Mapping, gb: Sequence[dict], order: ModuleOrder,
               leads: Sequence | None = None) -> dict:
    """Full reduction of ``v`` by a list of monic module elements."""
    if leads is None:
        leads = [order.lead(g) for g in gb]
    v = dict(v)
    out: dict = {}
    while v:
        lt = order.lead(v)
        c = v[lt]
        pos, e = lt
        for g, (gp, ge) in zip(gb, leads):
            if gp == pos and _divides(ge, e):
                _vadd_scaled(v, g, -c, _sub(e, ge))
                break
        else:
            out[lt] = c
            del v[lt]
    return out


def module_groebner(gens: Iterable[Mapping], order: ModuleOrder) -> list:
    """Reduced Groebner basis of the submodule spanned by ``gens``."""
    basis: list = []
    leads: list = []
    pairs: list = []

    def add(h):
        h = _normalize(h, order)
        basis.append(h)
        leads.append(order.lead(h))
        k = len(basis) - 1
        for i in range(k):
            if leads[i][0] == leads[k][0]:
                pairs.append((i, k))

    for g in gens:
        g = reduce_vec(g, basis, order, leads)
        if g:
            add(g)
    while pairs:
        pairs.sort(key=lambda ij: order.key((leads[ij[0]][0],
                                             _lcm(leads[ij[0]][1], leads[ij[1]][1]))))
        i, j = pairs.pop(0)
        (pi, ei), (pj, ej) = leads[i], leads[j]
        # product criterion, valid when both live in one coordinate
        if ring_coprime(ei, ej) and _single_position(basis[i]) and _single_position(basis[j]):
            continue
        m = _lcm(ei, ej)
        s: dict = {}
        _vadd_scaled(s, basis[i], Fraction(1), _sub(m, ei))
        _vadd_scaled(s, basis[j], Fraction(-1), _sub(m, ej))
        s = reduce_vec(s, basis, order, leads)
        if s:
            add(s)
    # minimize and interreduce
    keep = []
    for i, (p, e) in enumerate(leads):
        if any(j != i and leads[j][0] == p and _divides(leads[j][1], e)
               and (leads[j] != leads[i] or j < i) for j in range(len(leads))):
            continue
        keep.append(i)
    mins = [basis[i] for i in keep]
    out = []
    for i, g in enumerate(mins):
        others = mins[:i] + mins[i + 1:]
        lt = order.lead(g)
        tail = {k: a for k, a in g.items() if k != lt}
        red = reduce_vec(tail, others, order)
        red[lt] = g[lt]
        out.append(_normalize(red, order))
    out.sort(key=lambda g: order.key(order.lead(g)))
    return out


def ring_coprime(e, f) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(e, f))


def _single_position(v) -> bool:
    return len({p for p, _ in v}) == 1


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    polys: tuple

    def reduce(self, p: CPoly) -> CPoly:
        order = ModuleOrder(self.ring)
        gb = [vec_from_polys([g]) for g in self.polys]
        r = reduce_vec(vec_from_polys([p]), gb, order)
        return vec_to_polys(r, 1, self.ring)[0]

    def contains(self, p: CPoly) -> bool:
        return self.reduce(p).is_zero()

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.polys]


def buchberger(ideal: Sequence[CPoly], ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal under ``ring.order``."""
    if ring is None:
        ring = ideal[0].ring
    order = ModuleOrder(ring)
    gb = module_groebner([vec_from_polys([p]) for p in ideal if not p.is_zero()], order)
    return GroebnerBasis(ring, tuple(vec_to_polys(g, 1, ring)[0] for g in gb))


# -- modules ----------------------------------------------------------

@dataclass(frozen=True)
class CModule:
    """Cokernel of relation rows: R^rank / <rows>, generator weights."""

    ring: PolyRing
    rank: int
    relations: tuple = ()
    weights: tuple | None = None

    def __post_init__(self):
        rows = tuple(dict(r) for r in self.relations if r)
        object.__setattr__(self, "relations", rows)
        if self.weights is None:
            object.__setattr__(self, "weights", (0,) * self.rank)

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[CPoly]], rank: int | None = None,
                  weights=None) -> "CModule":
        rank = rank if rank is not None else (len(rows[0]) if rows else 1)
        vecs = []
        for row in rows:
            if len(row) != rank:
                raise ValueError("relation row has the wrong length")
            vecs.append(vec_from_polys(row))
        return cls(ring, rank, tuple(vecs), tuple(weights) if weights else None)

    @classmethod
    def quotient(cls, ring: PolyRing, ideal: Sequence[CPoly]) -> "CModule":
        """R / ideal as a cyclic module."""
        return cls.from_rows(ring, [[p] for p in ideal], 1)

    @classmethod
    def free(cls, ring: PolyRing, rank: int = 1) -> "CModule":
        return cls(ring, rank, ())

    def order(self) -> ModuleOrder:
        return ModuleOrder(self.ring, self.weights)

    def groebner(self) -> list:
        return module_groebner(self.relations, self.order())

    def is_zero(self) -> bool:
        gb = self.groebner()
        zero = (0,) * self.ring.n
        leads = {self.order().lead(g) for g in gb}
        return all((p, zero) in leads for p in range(self.rank))

    def rows(self) -> list:
        return [vec_to_polys(v, self.rank, self.ring) for v in self.relations]


def hilbert_function(module, up_to: int) -> GradedDims:
    """Standard monomials per degree for a module, ideal GB or ideal list.

    Accepts a :class:`CModule`, a :class:`GroebnerBasis` or a list of
    ideal generators (meaning R / ideal).
    """
    if isinstance(module, GroebnerBasis):
        module = CModule.quotient(module.ring, module.polys)
    elif not isinstance(module, CModule):
        polys = list(module)
        module = CModule.quotient(polys[0].ring, polys)
    order = module.order()
    gb = module.groebner()
    leads = [order.lead(g) for g in gb]
    ring = module.ring
    dims = [0] * (up_to + 1)
    for pos in range(module.rank):
        w = module.weights[pos]
        mine = [e for p, e in leads if p == pos]
        for d in range(max(0, w), up_to + 1):
            for e in ring.monomials_of_degree(d - w):
                if not any(_divides(m, e) for m in mine):
                    dims[d] += 1
    return GradedDims(tuple(dims), up_to)


def stabilization_window(length: int) -> int:
    return max(3, length // 4)


def growth_degree(dims) -> float | int:
    """Degree of polynomial growth of the cumulative sums of ``dims``.

    The least g whose g-th difference of the cumulative sequence is
    constant over the final window; ``-inf`` for the zero sequence.
    """
    seq = list(dims)
    if not any(seq):
        return NEG_INF
    cum, s = [], 0
    for d in seq:
        s += d
        cum.append(s)
    window = stabilization_window(len(cum))
    diff = cum
    g = 0
    while len(diff) >= window:
        tail = diff[-window:]
        if all(x == tail[0] for x in tail):
            return g
        diff = [b - a for a, b in zip(diff, diff[1:])]
        g += 1
    raise InsufficientData(
        f"no stabilization of finite differences within {len(cum)} terms "
        f"(window {window})")


# -- syzygies, resolutions, Ext ----------------------------------------

def syzygies(vectors: Sequence[Mapping], rank: int, ring: PolyRing) -> list:
    """Generators of {c in R^m : sum c_i v_i = 0} for v_i in R^rank."""
    m = len(vectors)
    if m == 0:
        return []
    lifted = []
    for i, v in enumerate(vectors):
        w = dict(v)
        w[(rank + i, (0,) * ring.n)] = Fraction(1)
        lifted.append(w)
    order = ModuleOrder(ring, elim=rank)
    gb = module_groebner(lifted, order)
    out = []
    for g in gb:
        if all(p >= rank for p, _ in g):
            out.append({(p - rank, e): c for (p, e), c in g.items()})
    return out


def _trim(vectors: list, rank: int, ring: PolyRing) -> list:
    """Drop generators lying in the span of the others."""
    vecs = [v for v in vectors if v]
    order = ModuleOrder(ring)
    i = len(vecs) - 1
    while i >= 0:
        others = vecs[:i] + vecs[i + 1:]
        if others:
            gb = module_groebner(others, order)
            if not reduce_vec(vecs[i], gb, order):
                vecs = others
        i -= 1
    return vecs


@dataclass(frozen=True)
class FreeResolutionStep:
    """Map F_{i+1} -> F_i; ``rows`` are images of the basis of F_{i+1}."""

    source_rank: int
    target_rank: int
    rows: tuple

    def matrix(self, ring: PolyRing) -> list:
        return [vec_to_polys(r, self.target_rank, ring) for r in self.rows]


def _compose_zero(rows_a, rows_b, ring) -> bool:
    # rows_a: F2 -> F1 (vectors in R^r1), rows_b: F1 -> F0
    for ra in rows_a:
        acc: dict = {}
        for (pos, e), c in ra.items():
            _vadd_scaled(acc, rows_b[pos], c, e)
        if acc:
            return False
    return True


def free_resolution(module: CModule, length: int) -> list:
    """Free resolution F_length -> ... -> F_0 -> M by iterated syzygies."""
    ring = module.ring
    steps = []
    rows = _trim(list(module.relations), module.rank, ring)
    target = module.rank
    for _ in range(length):
        if not rows:
            break
        steps.append(FreeResolutionStep(len(rows), target, tuple(rows)))
        nxt = syzygies(rows, target, ring)
        target = len(rows)
        rows = _trim(nxt, target, ring)
    return steps


def resolution_ranks(module: CModule, steps: list) -> tuple:
    return (module.rank,) + tuple(s.source_rank for s in steps)


def check_resolution(module: CModule, steps: list) -> bool:
    """Consecutive maps compose to zero and the complex is exact."""
    ring = module.ring
    for a, b in zip(steps[1:], steps):
        if not _compose_zero(a.rows, b.rows, ring):
            return False
        # exactness: ker(b) equals im(a)
        kernel = syzygies(b.rows, b.target_rank, ring)
        order = ModuleOrder(ring)
        gb = module_groebner(a.rows, order)
        if any(reduce_vec(k, gb, order) for k in kernel):
            return False
    return True


def _transpose(rows: Sequence[Mapping], nrows: int, ncols: int) -> list:
    out = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for (pos, e), c in r.items():
            out[pos][(i, e)] = c
    return out


@dataclass
class ExtResult:
    q: int
    module: CModule
    nonzero: bool
    witness: dict | None = None


def ext_modules(module: CModule, max_q: int) -> list:
    """Ext^q_R(M, R) for q = 0..max_q as presented modules."""
    ring = module.ring
    steps = free_resolution(module, max_q + 1)
    ranks = list(resolution_ranks(module, steps))
    # d_q : F_q -> F_{q-1} has rows = steps[q-1].rows
    out = []
    for q in range(max_q + 1):
        rq = ranks[q] if q < len(ranks) else 0
        if rq == 0:
            out.append(ExtResult(q, CModule(ring, 0), False))
            continue
        # kernel of the dual of d_{q+1}
        if q + 1 <= len(steps):
            d_next = steps[q]
            dual = _transpose(d_next.rows, d_next.source_rank, rq)
            kernel = syzygies(dual, d_next.source_rank, ring)
        else:
            kernel = [{(i, (0,) * ring.n): Fraction(1)} for i in range(rq)]
        # image of the dual of d_q
        if q >= 1:
            d_q = steps[q - 1]
            image = _transpose(d_q.rows, d_q.source_rank, d_q.target_rank)
        else:
            image = []
        image = [v for v in image if v]
        out.append(_quotient(kernel, image, rq, ring, q))
    return out


def _quotient(kernel, image, rank, ring, q) -> ExtResult:
    order = ModuleOrder(ring)
    gb = module_groebner(image, order) if image else []
    kept = []
    witness = None
    for k in kernel:
        r = reduce_vec(k, gb, order) if gb else dict(k)
        if r:
            kept.append(k)
            if witness is None:
                witness = k
    if not kept:
        return ExtResult(q, CModule(ring, 0), False)
    s = len(kept)
    syz = syzygies(list(kept) + list(image), rank, ring)
    rels = []
    for v in syz:
        proj = {(p, e): c for (p, e), c in v.items() if p < s}
        if proj:
            rels.append(proj)
    return ExtResult(q, CModule(ring, s, tuple(rels)), True, witness)


@dataclass(frozen=True)
class CanonicalComplexSpec:
    """Ambient polynomial ring and the ideal presenting A as its quotient."""

    ring: PolyRing
    ideal: tuple = ()

    @property
    def shift(self) -> int:
        return self.ring.n


def cdim_commutative(spec: CanonicalComplexSpec, module: CModule):
    """n - min{ j : Ext^j(M, k[t]) != 0 }, or -inf for M = 0."""
    if module.ring != spec.ring:
        raise NotFiniteOverAmbient(
            "module is not presented over the ambient polynomial ring")
    rows = list(module.relations)
    for f in spec.ideal:
        for pos in range(module.rank):
            rows.append({(pos, e): c for e, c in f.terms.items()})
    m = CModule(module.ring, module.rank, tuple(rows), module.weights)
    if m.rank == 0 or m.is_zero():
        return NEG_INF
    n = spec.ring.n
    for res in ext_modules(m, n):
        if res.nonzero:
            return n - res.q
    raise AlgebraError("nonzero module with vanishing Ext up to n")


def ideal_as_module(ring: PolyRing, ideal: Sequence[CPoly]) -> CModule:
    """The ideal I as an abstract module: generators f_i, relations = syzygies."""
    gens = [vec_from_polys([f]) for f in ideal]
    syz = syzygies(gens, 1, ring)
    weights = tuple(int(f.degree()) for f in ideal)
    return CModule(ring, len(ideal), tuple(syz), weights)
