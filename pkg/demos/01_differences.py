"""
Finite and divided differences
==============================

A prefix s(0..N) is the same data as its difference coefficients
c(n) = Delta^n s(0), the coordinates of s in the binomial basis.
"""

from ddx import (
    SequencePrefix,
    divided_difference,
    divided_difference_recursive,
    finite_differences,
    inverse_binomial_transform,
    newton_interpolate,
    polynomiality_certificate,
)

# squares: c = 0, 1, 2 and then nothing
s = SequencePrefix.from_function(lambda n: n * n, 8)
c = finite_differences(s)
print("c(n) for n^2:", [str(x) for x in c])

# going back through the binomial transform gives the prefix again
print("round trip ok:", inverse_binomial_transform(c).values == s.values)

# divided differences are symmetric and the two evaluation routes agree
cube = SequencePrefix.from_function(lambda n: n**3, 10)
t = (0, 2, 5, 7)
print("delta^3 n^3 on", t, "=", divided_difference(cube, t), divided_difference_recursive(cube, t[::-1]))

# Newton form through three nodes of 2^n
growth = SequencePrefix.from_function(lambda n: 2**n, 6)
nf = newton_interpolate(growth, [0, 1, 3])
print("Newton coefficients:", [str(x) for x in nf.coefficients], "value at 3:", nf(3))

# a tail of zeros certifies a polynomial; 2^n never gets one
cert = polynomiality_certificate(cube, 4)
print("n^3: polynomial of degree", cert.degree, "Newton", [str(x) for x in cert.newton.coefficients])
print("2^n:", polynomiality_certificate(growth, 3))
