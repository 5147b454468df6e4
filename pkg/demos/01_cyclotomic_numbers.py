"""Exact numbers in Q(zeta_n): a short tour.

Run:  python3 demos/01_cyclotomic_numbers.py
"""
from fractions import Fraction

from quasitomo.cyclotomic import CycNum, norm_full, norm_to_Q, sign_of_real, vp_one_minus_root, zeta

z8 = zeta(8)
sqrt2 = z8 + z8 ** 7          # zeta_8 + its conjugate
print("sqrt2 =", sqrt2, " squared:", sqrt2 * sqrt2)

# mixing orders lifts both sides to the lcm
s = zeta(3) + zeta(4)
print("zeta_3 + i lives in order", s.order, "~", complex(s))

# norms and valuations; 1 - zeta_9 has 3-adic valuation 1/6 and norm 3
x = 1 - zeta(9)
print("N(1 - zeta_9) =", norm_full(x), " v_3 =", vp_one_minus_root(3, 9, 1))

# silver mean powers: doubles cancel to garbage where exact arithmetic does not
lam = 1 + sqrt2
big = lam ** 40
x = (big + lam ** -40) - big
print("float estimate:", complex(big + lam ** -40).real - complex(big).real,
      " exact sign:", sign_of_real(x), " x == lambda^-40:", x == lam ** -40)

q = CycNum.rational(Fraction(8, 5), 8)
print("norm of 8/5 from the real quadratic subfield:", norm_to_Q(q) ** 2)
