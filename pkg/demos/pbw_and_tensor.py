"""
PBW bases and tensor products
=============================

U(sl2) has the ordered monomials e^a f^b h^c as a basis, so the degree-d
piece has binom(d + 2, 2) words.  Tensor products multiply Hilbert series,
and A1 (x) A1 is the second Weyl algebra.
"""

from math import comb

from filtalg.constructors import sl2, tensor, u_lie, weyl
from filtalg.filtration import gr_dims
from filtalg.ncalg import complete_to_cap

u, F = u_lie(sl2())
print("rules:", complete_to_cap(u, cap=6).rule_strings())
print("dims:", tuple(gr_dims(u, F, 8)))
print("binom:", tuple(comb(d + 2, 2) for d in range(9)))

# under the Bernstein filtration every piece is finite, so counts convolve
_, _, B1 = weyl(1)
d1 = gr_dims(B1.weighted(), B1, 6)
pres, G = tensor(B1, B1)
print("A1:", tuple(d1))
print("A1 (x) A1:", tuple(gr_dims(pres, G, 6)))
_, _, B2 = weyl(2)
print("A2:", tuple(gr_dims(B2.weighted(), B2, 6)))
