"""
Counting valuations of products of differences
==============================================

tau_{p,m}(n) is the largest possible p-adic valuation of
prod (n - n_i) over m distinct n_i < n.  Three routes compute it.
"""

from ddx import tau_bruteforce, tau_explicit, tau_greedy
from ddx.tau import tau_formula_value

p, m = 3, 2
print(" n  brute greedy formula")
for n in range(m, 20):
    print(f"{n:2d}  {tau_bruteforce(p, m, n):5d} {tau_greedy(p, m, n):6d} {tau_explicit(p, m, n):7d}")

# the closed form only holds for p >= m; p = 2, m = 3 breaks it already at n = 4
print("p=2, m=3, n=4: greedy", tau_greedy(2, 3, 4), "formula", tau_formula_value(2, 3, 4))
