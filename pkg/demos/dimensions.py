"""
Growth, Ext and dimension
=========================

GK dimension is read off the growth of a filtration.  For commutative
polynomial rings the same number comes out of Ext against the ring, the
least q with Ext^q(M, R) nonzero giving n - q.
"""

from filtalg import corpus
from filtalg.commalg import (
    CanonicalComplexSpec,
    CModule,
    PolyRing,
    cdim_commutative,
    ext_modules,
    free_resolution,
    growth_degree,
    hilbert_function,
    resolution_ranks,
)
from filtalg.dimension import ModulePresentation, gkdim_module

a1, _ = corpus.a1()
for label, rels in (("A1", []), ("A1/A1y", ["y"]), ("A1/(A1x + A1y)", ["x", "y"])):
    print(label, "GKdim", gkdim_module(ModulePresentation.cyclic(a1, rels), 8))

R = PolyRing(("x", "y"))
x, y = R.var(0), R.var(1)
spec = CanonicalComplexSpec(R)
for label, m in (("k", CModule.quotient(R, [x, y])),
                 ("A/(x)", CModule.quotient(R, [x])),
                 ("A/(x^2, xy)", CModule.quotient(R, [x ** 2, x * y])),
                 ("A", CModule.free(R))):
    h = hilbert_function(m, 8)
    steps = free_resolution(m, 3)
    ext = [e.q for e in ext_modules(m, 2) if e.nonzero]
    print(f"{label:12} hilbert {tuple(h)} ranks {resolution_ranks(m, steps)} "
          f"Ext in {ext} cdim {cdim_commutative(spec, m)} growth {growth_degree(h)}")
