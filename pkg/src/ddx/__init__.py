"""Exact divided-difference calculus, p-adic norms and prime-weighted tau sums."""

from ddx.core import INF, Rational, binomial, format_rational, harmonic, is_prime, parse_rational, vp
from ddx.difference import (
    NewtonForm,
    Polynomial,
    SequencePrefix,
    Witness,
    canonical_tuple,
    divided_difference,
    divided_difference_recursive,
    finite_differences,
    inverse_binomial_transform,
    newton_interpolate,
    polynomiality_certificate,
)
from ddx.tau import (
    ConvergenceRow,
    PrimeTable,
    chebyshev_theta,
    convergence_table,
    floor_log,
    lcm_identity_check,
    sieve,
    tau_bruteforce,
    tau_explicit,
    tau_greedy,
    tau_weighted_sum,
    top_digit,
)
from ddx.mahler import (
    MahlerCoefficients,
    NormValue,
    bruteforce_norm_lhs,
    clearing_constant,
    integrality_report,
    mahler_reconstruct,
    schikhof_coefficients,
    truncated_norm_rhs,
    tuple_bijection,
)
from ddx.checker import (
    LocalApprox,
    PlaceDescriptor,
    ThresholdVerdict,
    extremal_sequence,
    growth_estimate,
    growth_threshold,
    hall_ruzsa_report,
    lipschitz_check,
    local_approx,
    local_gcd_identity,
    threshold_check,
)

__version__ = "0.1.0"
