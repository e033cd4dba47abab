"""
Integrality against growth
==========================

An integer-valued divided difference plus slow growth forces a polynomial.
The extremal sequence sits exactly on the integrality bound and grows like
lcm(1..n), so it shows where the growth threshold is.
"""

import math

from ddx import (
    PlaceDescriptor,
    SequencePrefix,
    extremal_sequence,
    growth_estimate,
    growth_threshold,
    hall_ruzsa_report,
    threshold_check,
)

for m in (1, 2, 3):
    print(f"m={m}: threshold e^H_m - 1 = {growth_threshold(m):.5f}")

s = extremal_sequence(1, 40)
print("extremal m=1, s(n)^(1/n):", [round(math.exp(math.log(s[n]) / n), 3) for n in (12, 20, 30, 40)])

for name, seq in [
    ("n^3", SequencePrefix.from_function(lambda n: n**3, 20)),
    ("2^n", SequencePrefix.from_function(lambda n: 2**n, 20)),
    ("extremal", extremal_sequence(1, 20)),
]:
    rep = hall_ruzsa_report(seq, 1)
    print(f"{name:9s} {rep['verdict']:22s} violated={rep['violated']} flags={rep['flags']}")

print("growth of 2^n:", growth_estimate(SequencePrefix.from_function(lambda n: 2**n, 16)))

# the same threshold place by place: one real place of size 1.5 passes, 9 with a 2-adic disc of radius 2 too
print(threshold_check([PlaceDescriptor("archimedean", theta=1.5)], 1, 1))
print(threshold_check([PlaceDescriptor("archimedean", theta=9), PlaceDescriptor("finite-T", p=2, R=2)], 1, 1))
