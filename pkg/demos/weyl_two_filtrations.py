"""
The first Weyl algebra and its two filtrations
==============================================

A1 is generated by x and y = d/dx with yx - xy = 1.  We complete the
relation to a rewriting system, look at the associated graded algebra
and the Rees algebra, and then build the second filtration G under which
gr is commutative and connected.
"""

from filtalg import corpus
from filtalg.filtration import gr_dims, gr_presentation, rees_presentation, specialize
from filtalg.ncalg import complete_to_cap
from filtalg.twofilt import run_twofilt

# the order filtration: x in degree 0, y in degree 1
pres, F = corpus.a1()
rs = complete_to_cap(pres, cap=8)
print("rules:", rs.rule_strings(), rs.status)

# y*x*x rewrites to x*x*y + 2*x
print("nf(y*x*x) =", pres.fmt(rs.nf(pres.poly("y*x*x"))))

# gr kills the constant in the relation; x has degree 0, so the
# counts below are truncated by the size cap
gr = gr_presentation(pres, F, rs)
print("gr relation:", [gr.fmt(r) for r in gr.relations])
print("gr dims:", tuple(gr_dims(pres, F, 8)))

# the Rees algebra homogenizes with a central t; t = 1 and t = 0 give back
# A1 and gr A1
rees = rees_presentation(pres, F)
print("Rees relation:", [rees.fmt(r) for r in rees.relations])
for lam in (1, 0):
    sp = specialize(rees, lam)
    print(f"t = {lam}:", [sp.fmt(r) for r in sp.relations])

# F has gr_0 of infinite dimension (every power of x), so it is not
# connected.  The two-filtration construction finds G with x -> 1, y -> 2.
res = run_twofilt(pres, F, cap=8)
print("split:", res.split.a, res.split.b, res.split.c)
print("exponents:", res.exponents.as_tuple())
print("G:", res.G.as_dict(), "passed:", res.passed)
