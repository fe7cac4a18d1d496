"""
Ore witnesses and an obstruction
================================

In A1 every nonzero element is a denominator.  For s = x and a = y we look
for the least k with x^k * y = a' * x.  Then we watch the least k grow with
the power of y, and finish with the skew polynomial ring where the search
cannot succeed and a certificate explains why.
"""

from filtalg import corpus
from filtalg.localization import (
    OreQuery,
    mu_obstruction_for,
    ore_witness_search,
    right_ore_search,
    skew_ore_query,
    verify_witness,
)
from filtalg.ncalg import complete_to_cap

pres, _ = corpus.a1()
rs = complete_to_cap(pres, cap=10)
x, y = pres.gen("x"), pres.gen("y")

v = ore_witness_search(OreQuery(pres, x, y), rs)
print(f"x^{v.k} * y = ({pres.fmt(v.a_prime)}) * x, verified:",
      verify_witness(pres, x, y, v, rs=rs))

# the right condition y * x^k = x * a'
v = right_ore_search(OreQuery(pres, x, y))
print(f"right: k = {v.k}, a' = {pres.fmt(rs.nf(v.a_prime))}")

# y^d needs k = d + 1: ad_x^d(y^d) = d! survives modulo A*x
for d in range(1, 5):
    a = pres.poly("*".join(["y"] * d))
    v = ore_witness_search(OreQuery(pres, x, a, k_max=6, cap=10), rs)
    print(f"a = y^{d}: least k = {v.k}")

# B = Q[t][a; t -> -t] inside its enveloping algebra, s = t - t'
q = skew_ore_query(k_max=4, cap=6)
print(type(ore_witness_search(q)).__name__)
cert = ore_witness_search(q, obstruction=mu_obstruction_for)
for line in cert.details:
    print(" ", line)
