"""
Local polynomial structure
==========================

If delta^m s is integral, s agrees with a degree < m polynomial on each
progression n0 + eps*N up to a multiple of eps^m.
"""

from ddx import SequencePrefix, extremal_sequence, lipschitz_check, local_approx, local_gcd_identity

s = SequencePrefix.from_function(lambda n: n * (n - 1) * (n - 2), 12)
la = local_approx(s, 2, 1, 3)
print("f(x) through", la.f.nodes, "coefficients", [str(x) for x in la.f.coefficients])
for ev in la.residual_valuations:
    print(f"  n={ev['n']:2d} residual={ev['residual']:>4s} v_3={ev['valuations']['3']} (need {ev['required']['3']})")
print("gcd identity:", local_gcd_identity(la, s))

# lower differences are p-adically Lipschitz when the top one is bounded
rep = lipschitz_check(extremal_sequence(3, 18), 3, 2, 2000, seed=1)
print("lipschitz:", rep["verdict"], rep["violations"], "violations in", rep["samples"], "samples")
