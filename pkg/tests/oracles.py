"""Independent oracles.  Nothing here imports the rewriting engine.

- span oracle: dense linear algebra on spans of u*r*v in the free algebra
- operator oracle: A1, A2, U(sl2) acting by differential operators (sympy)
- commutative oracle: sympy Groebner bases and standard-monomial counts
- tensor oracle: explicit B (x) B^op arithmetic for the skew example
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy as sp


# -- span oracle -------------------------------------------------------

def words(ngens, weights, max_size):
    """All words with sum of max(1, w) <= max_size."""
    size = [max(1, w) for w in weights]
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for u in frontier:
            s = sum(size[g] for g in u)
            for g in range(ngens):
                if s + size[g] <= max_size:
                    nxt.append(u + (g,))
        out.extend(nxt)
        frontier = nxt
    return out


def _rank_rows(rows):
    """Row echelon over Q; returns list of (pivot, row) with rows as dicts."""
    basis = {}
    for r in rows:
        r = {k: Fraction(v) for k, v in r.items() if v}
        while r:
            p = max(r)
            if p not in basis:
                c = r[p]
                basis[p] = {k: v / c for k, v in r.items()}
                break
            b = basis[p]
            c = r[p]
            for k, v in b.items():
                r[k] = r.get(k, 0) - c * v
                if not r[k]:
                    del r[k]
    return basis


def ideal_span(ngens, weights, relations, max_size):
    """Echelon basis of span{u r v : size <= max_size} in the free algebra.

    Relations are dicts word -> coefficient.  Column keys are
    (size, len, word) so the pivot is the largest word.
    """
    size = [max(1, w) for w in weights]

    def sz(w):
        return sum(size[g] for g in w)

    ws = words(ngens, weights, max_size)
    rows = []
    for r in relations:
        rs = max(sz(w) for w in r)
        for u in ws:
            if sz(u) + rs > max_size:
                continue
            for v in ws:
                if sz(u) + rs + sz(v) > max_size:
                    continue
                row = {}
                for w, c in r.items():
                    key = u + w + v
                    k = (sz(key), len(key), key)
                    row[k] = row.get(k, 0) + c
                rows.append(row)
    return _rank_rows(rows)


def quotient_count(ngens, weights, relations, max_size):
    """dim of (words of size <= N) / (truncated ideal span)."""
    basis = ideal_span(ngens, weights, relations, max_size)
    return len(words(ngens, weights, max_size)) - len(basis)


def in_span(basis, vec, size_of):
    r = {}
    for w, c in vec.items():
        k = (size_of(w), len(w), w)
        r[k] = r.get(k, 0) + Fraction(c)
        if not r[k]:
            del r[k]
    while r:
        p = max(r)
        if p not in basis:
            return False
        c = r[p]
        for k, v in basis[p].items():
            r[k] = r.get(k, 0) - c * v
            if not r[k]:
                del r[k]
    return True


# -- operator oracle ---------------------------------------------------

X1, X2, LAM = sp.symbols("X1 X2 lam")


def weyl_ops(n):
    """x_i -> multiplication by X_i, y_i -> d/dX_i."""
    xs = [X1, X2][:n]
    ops = [(lambda f, v=v: sp.expand(v * f)) for v in xs]
    ops += [(lambda f, v=v: sp.diff(f, v)) for v in xs]
    return ops, xs


def sl2_ops():
    """e = d/dX, f = -X^2 d/dX + lam X, h = -2X d/dX + lam (lam generic)."""
    X = X1
    e = lambda f: sp.diff(f, X)
    ff = lambda f: sp.expand(-X ** 2 * sp.diff(f, X) + LAM * X * f)
    h = lambda f: sp.expand(-2 * X * sp.diff(f, X) + LAM * f)
    return [e, ff, h], [X]


def apply_poly(ops, poly_terms, f):
    """Apply sum c * word to f; the rightmost letter acts first."""
    total = 0
    for w, c in poly_terms.items():
        g = f
        for letter in reversed(w):
            g = ops[letter](g)
        total += sp.Rational(c.numerator, c.denominator) * g if isinstance(c, Fraction) else c * g
    return sp.expand(total)


def same_operator(ops, xs, p, q, degree=6):
    """Compare two elements on all monomials of total degree <= ``degree``."""
    for exps in product(range(degree + 1), repeat=len(xs)):
        if sum(exps) > degree:
            continue
        f = sp.Integer(1)
        for v, e in zip(xs, exps):
            f *= v ** e
        if sp.expand(apply_poly(ops, p, f) - apply_poly(ops, q, f)) != 0:
            return False
    return True


# -- commutative oracle ------------------------------------------------

def sympy_groebner(polys, gens, order="grevlex"):
    return sp.groebner(polys, *gens, order=order)


def standard_monomial_counts(polys, gens, up_to):
    """Hilbert function of Q[gens]/(polys) in the degree order."""
    if not polys:
        lead = []
    else:
        G = sympy_groebner(polys, gens)
        lead = [sp.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    n = len(gens)
    out = []
    for d in range(up_to + 1):
        c = 0
        for e in product(range(d + 1), repeat=n):
            if sum(e) != d:
                continue
            if not any(all(a <= b for a, b in zip(m, e)) for m in lead):
                c += 1
        out.append(c)
    return out


# -- tensor oracle for B = Q[t][a; t -> -t] -----------------------------

def b_mul(p, q):
    """Products of dicts (i, j) -> c meaning t^i a^j; a^j t^k = (-1)^(jk) t^k a^j."""
    out = {}
    for (i, j), c in p.items():
        for (k, l), d in q.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d * (-1) ** (j * k)
    return {k: v for k, v in out.items() if v}


def mu_power_oracle(n):
    """mu(s^n (a (x) 1)) with s = t (x) 1 - 1 (x) t, in explicit tensor form."""
    # elements of B (x) B^op: dict ((i, j), (k, l)) -> c
    elem = {((0, 1), (0, 0)): 1}
    t = {(1, 0): 1}
    for _ in range(n):
        nxt = {}
        for (u, v), c in elem.items():
            # (t (x) 1) . (u (x) v) = t u (x) v
            for key, d in b_mul(t, {u: 1}).items():
                k2 = (key, v)
                nxt[k2] = nxt.get(k2, 0) + c * d
            # (1 (x) t) . (u (x) v) = u (x) v t  (product of B^op)
            for key, d in b_mul({v: 1}, t).items():
                k2 = (u, key)
                nxt[k2] = nxt.get(k2, 0) - c * d
        elem = {k: v for k, v in nxt.items() if v}
    out = {}
    for (u, v), c in elem.items():
        for key, d in b_mul({u: 1}, {v: 1}).items():
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}
