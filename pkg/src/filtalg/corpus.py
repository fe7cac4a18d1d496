"""Named example algebras and modules used by the tests and demos."""

from __future__ import annotations

from .commalg import CModule, PolyRing
from .constructors import (
    AlgebroidData,
    polynomial_ring,
    sl2,
    tensor,
    u_lie,
    u_lie_algebroid,
    weyl,
)
from .filtration import Filtration
from .ncalg import NCPoly


def a1():
    pres, order, _ = weyl(1)
    return pres, order


def a1_bernstein():
    pres, _, bern = weyl(1)
    return bern.weighted(), bern


def a2():
    pres, order, _ = weyl(2)
    return pres, order


def usl2():
    return u_lie(sl2())


def tangent_algebroid():
    """U(k[x]; T): the vector field d/dx acting on k[x]."""
    base = polynomial_ring(("x",), (0,), name="C")
    data = AlgebroidData(base, ("y",), anchor={(0, 0): NCPoly.one()})
    pres = u_lie_algebroid(data)[0].renamed("UT")
    return pres, Filtration.of(pres)


def x2_algebroid():
    """U(k[x]; L) with L spanned by x^2 d/dx, so [y, x] = x^2."""
    base = polynomial_ring(("x",), (0,), name="C")
    data = AlgebroidData(base, ("y",), anchor={(0, 0): NCPoly.gen(0) ** 2})
    pres = u_lie_algebroid(data)[0].renamed("UX2")
    return pres, Filtration.of(pres)


def a1_tensor_a1():
    return tensor(a1(), a1())


def twofilt_corpus() -> dict:
    """The algebras with differential filtrations of finite type."""
    return {
        "A1": a1(),
        "A2": a2(),
        "Usl2": usl2(),
        "UT": tangent_algebroid(),
        "A1xA1": a1_tensor_a1(),
    }


def commutative_corpus(ring: PolyRing) -> list:
    """(label, cyclic module) pairs over Q[x, y] or Q[x, y, z]."""
    v = [ring.var(i) for i in range(ring.n)]
    one = ring.one()
    if ring.n == 2:
        x, y = v
        ideals = {
            "k": [x, y],
            "A/(x)": [x],
            "A": [],
            "A/(xy)": [x * y],
            "A/(x^2, xy)": [x ** 2, x * y],
            "A/(x^2, y^3)": [x ** 2, y ** 3],
            "A/(y - x^2)": [y - x ** 2],
            "0": [one],
        }
    elif ring.n == 3:
        x, y, z = v
        ideals = {
            "k": [x, y, z],
            "A/(x)": [x],
            "A/(x, y)": [x, y],
            "A": [],
            "A/(xy, xz, yz)": [x * y, x * z, y * z],
            "A/(xy, xz)": [x * y, x * z],
            "twisted cubic": [y - x ** 2, z - x ** 3],
            "A/(x^2, y^2, z^2)": [x ** 2, y ** 2, z ** 2],
        }
    else:
        raise ValueError("corpus defined for 2 or 3 variables")
    return [(label, CModule.quotient(ring, gens)) for label, gens in ideals.items()]


def present_rank2(ring: PolyRing) -> CModule:
    """A rank-2 module over Q[x, y]: coker of the column (y, -x)."""
    x, y = ring.var(0), ring.var(1)
    return CModule.from_rows(ring, [[y, -x]], 2)
