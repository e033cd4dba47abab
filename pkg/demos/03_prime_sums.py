"""
Prime-weighted tau sums
=======================

The weighted sum over primes of tau_{p,m}(n) log p behaves like n * H_m.
For m = 1 it is log lcm(1..n), i.e. Chebyshev's psi.
"""

import math

from ddx import chebyshev_theta, convergence_table, sieve
from ddx.tau import convergence_csv, lcm_identity_check

table = sieve(10**6, threads=2)
print("primes below 10^6:", len(table.primes))
print("theta(10^6) / 10^6 =", chebyshev_theta(10**6, table) / 10**6)

# exact: prod p^tau_{p,1}(n) == lcm(1..n)
print("lcm identity up to 300:", all(lcm_identity_check(n) for n in range(1, 301)))

for m in (1, 2, 3):
    print(convergence_csv(convergence_table(m, [10**3, 10**4, 10**5, 10**6], table, threads=2)))

# the ratio wanders around 1 rather than approaching it from below: psi(10^5) > 10^5
print("psi(10^5) =", math.log(math.lcm(*range(1, 10**5 + 1))))
