"""
Mahler coefficients and p-adic norms
====================================

Divided differences of order m can be expanded in a multivariate binomial
basis.  The coefficients are c(n) over explicit integer denominators, which
turns the sup-norm over tuples into a maximum over n.
"""

from fractions import Fraction

from ddx import (
    SequencePrefix,
    bruteforce_norm_lhs,
    divided_difference,
    integrality_report,
    mahler_reconstruct,
    schikhof_coefficients,
    truncated_norm_rhs,
    tuple_bijection,
)

s = SequencePrefix.from_function(lambda n: Fraction(n**3 + 1, 6), 10)
C = schikhof_coefficients(s, 2)
a = (1, 0, 2)
t = tuple_bijection(a)
print("point", a, "-> tuple", t)
print("series:", mahler_reconstruct(C, a), " direct:", divided_difference(s, t))

# both sides of the norm identity, as exponents of p
for p in (2, 3, 5):
    lhs, rhs = bruteforce_norm_lhs(s, 2, p), truncated_norm_rhs(s, 2, p)
    print(f"p={p}: tuples give p^{lhs.exponent} at {lhs.attained_at}, tau side p^{rhs.exponent} at n={rhs.attained_at}")

print(integrality_report(s, 2).dumps())
print(integrality_report(s, 3).verdict)
