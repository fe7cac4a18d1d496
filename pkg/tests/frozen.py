"""Reference values produced by the oracles in oracles.py, then frozen.

test_oracles.py recomputes each entry from its oracle; the library
tests compare against these constants.
"""

from fractions import Fraction

# cumulative dims dim F_d (span oracle, weights all 1)
A1_BERNSTEIN_CUMULATIVE = [1, 3, 6, 10, 15, 21, 28]
USL2_CUMULATIVE = [1, 4, 10, 20, 35, 56]
A2_BERNSTEIN_CUMULATIVE = [1, 5, 15, 35, 70]

# tensor oracle: mu(s^n (a (x) 1)) as {(t-exponent, a-exponent): coefficient}
MU_POWERS = {n: {(n, 1): 2 ** n} for n in range(1, 7)}

# commutative oracle: Hilbert functions (degree order) up to degree 6
HILBERT_XYZ_COORD_AXES = [1, 3, 3, 3, 3, 3, 3]      # Q[x,y,z]/(xy, xz, yz)
HILBERT_TWISTED_CUBIC = [1, 3, 3, 3, 3, 3]          # Q[x,y,z]/(y - x^2, z - x^3)

# lex z > y > x basis of (y - x^2, z - x^3): already reduced
LEX_ELIMINATION = ["z - x^3", "y - x^2"]

# operator oracle: identities in A1 (x = X, y = d/dX)
#   y*x*x = x*x*y + 2*x
#   x^2 * y = (x*y - 1) * x          (Ore witness, k = 2)
#   x^5 * y^4 = a' * x with a' below (k = 5)
A1_NF_YXX = {(0, 0, 1): Fraction(1), (0,): Fraction(2)}
A1_ORE_Y = {(0, 1): Fraction(1), (): Fraction(-1)}
A1_ORE_Y4 = {
    (0, 0, 0, 0, 1, 1, 1, 1): Fraction(1),
    (0, 0, 0, 1, 1, 1): Fraction(-4),
    (0, 0, 1, 1): Fraction(12),
    (0, 1): Fraction(-24),
    (): Fraction(24),
}
