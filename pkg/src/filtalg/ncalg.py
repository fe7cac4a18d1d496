"""Noncommutative polynomials over the rationals and capped rewriting.

Words are tuples of generator indices.  An :class:`NCPoly` is a finite map
from words to :class:`fractions.Fraction` coefficients.  A
:class:`Presentation` names the generators, carries their filtration
degrees and the defining relations; :func:`complete_to_cap` orients the
relations into a :class:`RewriteSystem` whose normal forms are canonical
for all words up to a degree cap.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Word = tuple  # tuple[int, ...]

NEG_INF = float("-inf")
DEFAULT_CAP = 8

COMPLETE = "Complete-to-cap"
CAP_EXCEEDED = "CapExceeded"


class AlgebraError(Exception):
    """Base class for errors raised by filtalg."""


class CapExceeded(AlgebraError):
    """A computation needed a word above the degree cap."""

    def __init__(self, msg, word=None, cap=None):
        super().__init__(msg)
        self.word = word
        self.cap = cap


class NonOrientableRelation(AlgebraError):
    """A relation cannot be turned into a rewrite rule."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class NCPoly:
    """Element of the free associative algebra Q<x_0, x_1, ...>.

    Instances are immutable; arithmetic returns new objects.  Plain
    integers and fractions are coerced to constants where that makes sense.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _frac(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        # caller guarantees: tuple keys, Fraction values, no zeros
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def const(cls, c) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def gen(cls, i: int) -> "NCPoly":
        return cls._raw({(i,): Fraction(1)})

    @classmethod
    def word(cls, w: Sequence[int], c=1) -> "NCPoly":
        return cls({tuple(w): c})

    @classmethod
    def coerce(cls, x) -> "NCPoly":
        if isinstance(x, NCPoly):
            return x
        return cls.const(x)

    # -- read access -------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return self._terms

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coefficient(self, w) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def generators_used(self) -> set:
        return {g for w in self._terms for g in w}

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        other = NCPoly.coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-NCPoly.coerce(other))

    def __rsub__(self, other):
        return NCPoly.coerce(other) - self

    def scale(self, c) -> "NCPoly":
        c = _frac(c)
        if not c:
            return NCPoly.zero()
        return NCPoly._raw({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return free_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def reverse(self) -> "NCPoly":
        return NCPoly._raw({w[::-1]: c for w, c in self._terms.items()})

    def substitute(self, images: Mapping[int, "NCPoly"]) -> "NCPoly":
        """Apply the algebra map sending generator i to ``images[i]``.

        Generators missing from ``images`` are left unchanged.
        """
        out = NCPoly.zero()
        for w, c in self._terms.items():
            t = NCPoly.const(c)
            for g in w:
                t = t * images.get(g, NCPoly.gen(g))
            out = out + t
        return out

    def relabel(self, mapping: Mapping[int, int]) -> "NCPoly":
        return NCPoly._raw(
            {tuple(mapping[g] for g in w): c for w, c in self._terms.items()}
        )

    # -- comparison --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == NCPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"NCPoly({format_poly(self)})"

    def sorted_terms(self, order: "MonomialOrder | None" = None):
        """Terms sorted from largest to smallest word."""
        key = order.key if order is not None else (lambda w: (len(w), w))
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)


def free_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Concatenation product in the free algebra."""
    out: dict = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            s = out.get(w, 0) + a * b
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NCPoly._raw(out)


def format_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    if names is None:
        names = [f"x{i}" for i in range(max(w) + 1)]
    return "*".join(names[g] for g in w)


def format_poly(p: NCPoly, names: Sequence[str] | None = None,
                order: "MonomialOrder | None" = None) -> str:
    """Render ``p`` in the DSL syntax, largest terms first."""
    if p.is_zero():
        return "0"
    parts = []
    for w, c in p.sorted_terms(order):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not w:
            body = format_coefficient(a)
        elif a == 1:
            body = format_word(w, names)
        else:
            body = format_coefficient(a) + "*" + format_word(w, names)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree, then length, then lexicographic on indices.

    With ``use_weights=False`` the weighted degree is skipped (plain
    length-lexicographic order); the weights are still used to measure
    word sizes against the cap.
    """

    weights: tuple
    use_weights: bool = True

    def weight(self, w: Word) -> int:
        ws = self.weights
        return sum(ws[g] for g in w)

    def size(self, w: Word) -> int:
        """Cap-degree of a word: weight-0 letters count 1."""
        ws = self.weights
        return sum(ws[g] if ws[g] > 0 else 1 for g in w)

    def key(self, w: Word):
        if self.use_weights:
            return (self.weight(w), len(w), w)
        return (0, len(w), w)

    def less(self, u: Word, v: Word) -> bool:
        return self.key(u) < self.key(v)

    def leading_word(self, p: NCPoly) -> Word:
        if p.is_zero():
            raise ValueError("zero polynomial has no leading word")
        return max(p.words(), key=self.key)

    def poly_size(self, p: NCPoly) -> int:
        return max((self.size(w) for w in p.words()), default=-1)


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class Presentation:
    """Generators with filtration degrees, relations and central flags.

    Each name listed in ``central`` contributes the commutators with every
    other generator as implied relations (see :meth:`all_relations`).
    """

    gens: tuple
    degrees: tuple
    relations: tuple = ()
    central: tuple = ()
    name: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "relations",
                           tuple(NCPoly.coerce(r) for r in self.relations))
        object.__setattr__(self, "central", tuple(self.central))
        if len(self.gens) != len(self.degrees):
            raise ValueError("one degree per generator required")
        if len(set(self.gens)) != len(self.gens):
            dup = sorted({g for g in self.gens if self.gens.count(g) > 1})
            raise ValueError(f"duplicate generator names: {dup}")
        for g in self.gens:
            if not _NAME_RE.match(g):
                raise ValueError(f"bad generator name {g!r}")
        if any(d < 0 for d in self.degrees):
            raise ValueError("filtration degrees must be nonnegative")
        n = len(self.gens)
        for r in self.relations:
            if any(g < 0 or g >= n for g in r.generators_used()):
                raise ValueError("relation uses a generator index out of range")
        for c in self.central:
            if c not in self.gens:
                raise ValueError(f"central generator {c!r} is not declared")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise KeyError(name) from None

    def gen(self, name: str) -> NCPoly:
        return NCPoly.gen(self.index(name))

    def all_relations(self) -> tuple:
        rels = list(self.relations)
        done = set()
        for c in self.central:
            i = self.index(c)
            for j in range(self.ngens):
                pair = (min(i, j), max(i, j))
                if j == i or pair in done:
                    continue
                done.add(pair)
                # oriented as (later)(earlier) - (earlier)(later)
                a, b = pair
                rels.append(NCPoly({(b, a): 1, (a, b): -1}))
        return tuple(rels)

    def with_degrees(self, degrees) -> "Presentation":
        return Presentation(self.gens, tuple(degrees), self.relations,
                            self.central, self.name)

    def renamed(self, name: str) -> "Presentation":
        return Presentation(self.gens, self.degrees, self.relations,
                            self.central, name)

    def order(self, use_weights: bool = True) -> MonomialOrder:
        return MonomialOrder(self.degrees, use_weights)

    def fmt(self, p: NCPoly) -> str:
        return format_poly(p, self.gens, self.order())

    def poly(self, text: str) -> NCPoly:
        """Parse a polynomial written in this presentation's generators."""
        from .dsl import parse_poly
        return parse_poly(text, self.gens)

    def reordered(self, names: Sequence[str]) -> "Presentation":
        """Same algebra with generators listed in the order ``names``."""
        if sorted(names) != sorted(self.gens):
            raise ValueError("reordering must be a permutation of the generators")
        perm = {self.index(n): k for k, n in enumerate(names)}
        degs = [self.degrees[self.index(n)] for n in names]
        rels = [r.relabel(perm) for r in self.relations]
        return Presentation(tuple(names), tuple(degs), tuple(rels),
                            self.central, self.name)


def _subword_positions(w: Word, lead: Word):
    n, m = len(w), len(lead)
    for i in range(n - m + 1):
        if w[i:i + m] == lead:
            yield i


class RewriteSystem:
    """Oriented rules ``lead -> tail`` with a degree cap.

    Normal forms are memoised per word.  The instance is otherwise
    immutable and can be shared.
    """

    def __init__(self, rules: Mapping, order: MonomialOrder, cap: int,
                 status: str = COMPLETE, ngens: int | None = None,
                 gens: Sequence[str] | None = None):
        self.order = order
        self.cap = cap
        self.status = status
        self.ngens = len(order.weights) if ngens is None else ngens
        self.gens = tuple(gens) if gens is not None else tuple(
            f"x{i}" for i in range(self.ngens))
        items = sorted(((tuple(l), NCPoly.coerce(t)) for l, t in rules.items()),
                       key=lambda lt: order.key(lt[0]))
        for lead, tail in items:
            for w in tail.words():
                if not order.less(w, lead):
                    raise ValueError(
                        f"rule {format_word(lead, self.gens)} -> "
                        f"{format_poly(tail, self.gens)} is not decreasing")
        self.rules = tuple(items)
        self._rule_map = dict(items)
        self._lengths = sorted({len(l) for l in self._rule_map})
        self._cache: dict = {}

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def leads(self):
        return [l for l, _ in self.rules]

    def find_redex(self, w: Word):
        """Leftmost-shortest rule occurrence in ``w`` or ``None``."""
        rm = self._rule_map
        n = len(w)
        for i in range(n):
            for m in self._lengths:
                if i + m > n:
                    break
                lead = w[i:i + m]
                if lead in rm:
                    return i, lead
        return None

    def is_normal(self, w: Word) -> bool:
        return self.find_redex(tuple(w)) is None

    def _check(self, w: Word):
        if self.order.size(w) > self.cap:
            raise CapExceeded(
                f"word {format_word(w, self.gens)} has degree "
                f"{self.order.size(w)} > cap {self.cap}", w, self.cap)

    def reduce_word(self, w: Word, check_cap: bool = True) -> NCPoly:
        w = tuple(w)
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        if check_cap:
            self._check(w)
        order = self.order
        rm = self._rule_map

        def hkey(u):
            k = order.key(u)
            return (-k[0], -k[1], tuple(-g for g in u))

        work = {w: Fraction(1)}
        heap = [(hkey(w), w)]
        result: dict = {}
        while heap:
            _, u = heapq.heappop(heap)
            c = work.pop(u, None)
            if not c:
                continue
            cached = self._cache.get(u)
            if cached is not None:
                for v, d in cached.items():
                    s = result.get(v, 0) + c * d
                    if s:
                        result[v] = s
                    else:
                        result.pop(v, None)
                continue
            red = self.find_redex(u)
            if red is None:
                s = result.get(u, 0) + c
                if s:
                    result[u] = s
                else:
                    result.pop(u, None)
                continue
            i, lead = red
            pre, post = u[:i], u[i + len(lead):]
            for t, d in rm[lead].items():
                v = pre + t + post
                if check_cap:
                    self._check(v)
                if v in work:
                    s = work[v] + c * d
                    if s:
                        work[v] = s
                    else:
                        del work[v]
                else:
                    work[v] = c * d
                    heapq.heappush(heap, (hkey(v), v))
        out = NCPoly._raw(result)
        self._cache[w] = out
        return out

    def normal_form(self, p, check_cap: bool = True) -> NCPoly:
        p = NCPoly.coerce(p)
        out: dict = {}
        for w, c in p.items():
            for v, d in self.reduce_word(w, check_cap).items():
                s = out.get(v, 0) + c * d
                if s:
                    out[v] = s
                else:
                    out.pop(v, None)
        return NCPoly._raw(out)

    nf = normal_form

    def mul(self, p, q, check_cap: bool = True) -> NCPoly:
        """Product in the quotient algebra, reduced to normal form."""
        return self.normal_form(NCPoly.coerce(p) * NCPoly.coerce(q), check_cap)

    def commutator(self, p, q) -> NCPoly:
        p, q = NCPoly.coerce(p), NCPoly.coerce(q)
        return self.normal_form(p * q - q * p)

    def normal_words(self, max_size: int | None = None) -> list:
        """All normal words of cap-degree <= ``max_size``, in order."""
        if max_size is None:
            max_size = self.cap
        order = self.order
        out = [()]
        frontier = [()]
        rm = self._rule_map
        lens = self._lengths
        while frontier:
            nxt = []
            for u in frontier:
                su = order.size(u)
                for g in range(self.ngens):
                    v = u + (g,)
                    if su + order.size((g,)) > max_size:
                        continue
                    # u is normal, so only suffixes of v can be rule leads
                    if any(len(v) >= m and v[-m:] in rm for m in lens):
                        continue
                    out.append(v)
                    nxt.append(v)
            frontier = nxt
        out.sort(key=order.key)
        return out

    def fmt(self, p: NCPoly) -> str:
        return format_poly(p, self.gens, self.order)

    def rule_strings(self) -> list:
        return [f"{format_word(l, self.gens)} -> {self.fmt(t)}" for l, t in self.rules]

    @classmethod
    def from_rules(cls, rules: Mapping, order: MonomialOrder, cap: int,
                   gens: Sequence[str] | None = None) -> "RewriteSystem":
        """Wrap a hand-made rule set; confluence is not checked."""
        rs = cls(rules, order, cap, COMPLETE, gens=gens)
        report = overlap_confluence_report(rs)
        rs.status = COMPLETE if report.confluent else CAP_EXCEEDED
        return rs


def _overlaps(l1: Word, l2: Word):
    """Proper overlaps where a suffix of ``l1`` is a prefix of ``l2``."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def _make_monic(p: NCPoly, order: MonomialOrder):
    lead = order.leading_word(p)
    c = p.coefficient(lead)
    tail = {w: -v / c for w, v in p.items() if w != lead}
    return lead, NCPoly._raw(tail)


def complete_to_cap(pres: Presentation, order: MonomialOrder | None = None,
                    cap: int = DEFAULT_CAP) -> RewriteSystem:
    """Degree-truncated noncommutative Groebner completion.

    All overlap ambiguities whose overlap word has cap-degree <= ``cap`` are
    resolved.  If resolving them produced a rule whose leading word lies
    above the cap, the returned system has status ``CapExceeded``.
    """
    if order is None:
        order = pres.order()
    rels = [r for r in pres.all_relations() if not r.is_zero()]
    for r in rels:
        if order.poly_size(r) > cap:
            raise ValueError(
                f"cap {cap} is below the degree of relation {pres.fmt(r)}")

    rules: dict = {}
    status = COMPLETE
    pairs: list = []
    seen_pairs: set = set()

    current: list = [None]

    def reduce(p: NCPoly) -> NCPoly:
        if current[0] is None:
            current[0] = RewriteSystem(rules, order, cap, ngens=pres.ngens,
                                       gens=pres.gens)
        return current[0].normal_form(p, check_cap=False)

    def push_pairs(lead):
        for other in list(rules):
            for a, b in ((lead, other), (other, lead)):
                for k in _overlaps(a, b):
                    w = a + b[k:]
                    if order.size(w) > cap:
                        continue
                    key = (a, b, k)
                    if key in seen_pairs:
                        continue
                    seen_pairs.add(key)
                    heapq.heappush(pairs, (order.key(w), a, b, k))

    def add_poly(p: NCPoly):
        nonlocal status
        queue = [p]
        while queue:
            q = reduce(queue.pop())
            if q.is_zero():
                continue
            lead, tail = _make_monic(q, order)
            if lead == ():
                raise NonOrientableRelation(
                    "a relation reduces to a nonzero constant; the presented "
                    "algebra collapses and cannot be oriented")
            if order.size(lead) > cap:
                status = CAP_EXCEEDED
            # drop rules whose leads contain the new lead
            for l in [l for l in rules if any(True for _ in _subword_positions(l, lead))]:
                t = rules.pop(l)
                queue.append(NCPoly.word(l) - t)
            rules[lead] = tail
            current[0] = None
            push_pairs(lead)

    for r in sorted(rels, key=lambda r: order.key(order.leading_word(r))):
        add_poly(r)

    while pairs:
        _, a, b, k = heapq.heappop(pairs)
        if a not in rules or b not in rules:
            continue
        left = rules[a] * NCPoly.word(b[k:])
        right = NCPoly.word(a[:-k]) * rules[b]
        s = reduce(left - right)
        if not s.is_zero():
            add_poly(s)

    # interreduce tails
    final = {}
    tmp = RewriteSystem(rules, order, cap, ngens=pres.ngens, gens=pres.gens)
    for lead, tail in rules.items():
        final[lead] = tmp.normal_form(tail, check_cap=False)
    rs = RewriteSystem(final, order, cap, status, ngens=pres.ngens, gens=pres.gens)
    if status == COMPLETE and _frontier_unresolved(rs):
        rs.status = CAP_EXCEEDED
    return rs


def _frontier_unresolved(rs: RewriteSystem) -> bool:
    """True if some overlap just above the cap needs a new rule."""
    order = rs.order
    leads = list(rs._rule_map)
    for a in leads:
        for b in leads:
            for k in _overlaps(a, b):
                w = a + b[k:]
                if order.size(w) <= rs.cap:
                    continue
                left = rs._rule_map[a] * NCPoly.word(b[k:])
                right = NCPoly.word(a[:-k]) * rs._rule_map[b]
                if not rs.normal_form(left - right, check_cap=False).is_zero():
                    return True
    return False


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(p)


@dataclass(frozen=True)
class CriticalPair:
    left_lead: Word
    right_lead: Word
    overlap: int
    word: Word
    difference: NCPoly

    @property
    def resolves(self) -> bool:
        return self.difference.is_zero()


@dataclass
class ConfluenceReport:
    cap: int
    pairs: list = field(default_factory=list)
    above_cap: int = 0

    @property
    def confluent(self) -> bool:
        return all(p.resolves for p in self.pairs)

    def failures(self) -> list:
        return [p for p in self.pairs if not p.resolves]


def overlap_confluence_report(rs: RewriteSystem) -> ConfluenceReport:
    """Reduce every overlap ambiguity up to the cap and list the results."""
    report = ConfluenceReport(rs.cap)
    leads = rs.leads()
    rm = rs._rule_map
    found = []
    for a in leads:
        for b in leads:
            for k in _overlaps(a, b):
                found.append((a, b, k))
            # inclusion ambiguities: b strictly inside a
            if len(b) < len(a):
                for i in _subword_positions(a, b):
                    found.append((a, b, -i - 1))
    for a, b, k in sorted(found, key=lambda t: (rs.order.key(t[0]), rs.order.key(t[1]), t[2])):
        if k > 0:
            w = a + b[k:]
            left = rm[a] * NCPoly.word(b[k:])
            right = NCPoly.word(a[:-k]) * rm[b]
        else:
            i = -k - 1
            w = a
            left = rm[a]
            right = NCPoly.word(a[:i]) * rm[b] * NCPoly.word(a[i + len(b):])
        if rs.order.size(w) > rs.cap:
            report.above_cap += 1
            continue
        diff = rs.normal_form(left - right, check_cap=False)
        report.pairs.append(CriticalPair(a, b, k, w, diff))
    return report


def words_up_to(ngens: int, order: MonomialOrder, max_size: int) -> Iterator[Word]:
    """Every word (normal or not) of cap-degree <= ``max_size``."""
    frontier = [()]
    yield ()
    while frontier:
        nxt = []
        for u in frontier:
            su = order.size(u)
            for g in range(ngens):
                if su + order.size((g,)) <= max_size:
                    v = u + (g,)
                    nxt.append(v)
                    yield v
        frontier = nxt


def weighted_degree(p: NCPoly, weights: Sequence[int]):
    """Maximum weight of a term, ``-inf`` for the zero polynomial."""
    if p.is_zero():
        return NEG_INF
    return max(sum(weights[g] for g in w) for w in p.words())


def top_form(p: NCPoly, weights: Sequence[int]) -> NCPoly:
    d = weighted_degree(p, weights)
    if d == NEG_INF:
        return NCPoly.zero()
    return NCPoly._raw({w: c for w, c in p.items()
                        if sum(weights[g] for g in w) == d})
