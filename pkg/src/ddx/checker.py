"""Pipelines built on the norm identity and the harmonic prime sums.

* :func:`threshold_check` evaluates the place-by-place growth inequality
  ``prod (1+theta)^d * prod max(1,theta)^d * prod (p^(1/(p-1)) R)^(-d) < e^(d H_m)``.
* :func:`hall_ruzsa_report` runs the integrality / growth / polynomiality
  gates on a finite prefix.
* :func:`extremal_sequence` builds the sequence whose difference coefficients
  saturate every p-adic bound.
* :func:`local_approx`, :func:`local_gcd_identity` and :func:`lipschitz_check`
  test the local consequences of integral divided differences.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sympy import primefactors

from ddx.core import INF, format_rational, format_valuation, harmonic, is_prime, rational_gcd, vp
from ddx.difference import (
    NewtonForm,
    Polynomial,
    SequencePrefix,
    _as_values,
    divided_difference,
    inverse_binomial_transform,
    newton_interpolate,
    polynomiality_certificate,
)
from ddx.mahler import integrality_report, truncated_norm_rhs
from ddx.tau import sieve, tau

BOUNDARY_BAND = 1e-9
PLACE_KINDS = ("archimedean", "finite-S", "finite-T")


@dataclass(frozen=True)
class PlaceDescriptor:
    """Parameters of one place: growth base ``theta`` for S-places, ``(p, R)`` for T-places."""

    kind: str
    degree: int = 1
    theta: Optional[float] = None
    p: Optional[int] = None
    R: Optional[float] = None

    def __post_init__(self):
        if self.kind not in PLACE_KINDS:
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.degree < 1:
            raise ValueError("local degree must be at least 1")
        if self.kind == "finite-T":
            if self.p is None or not is_prime(self.p):
                raise ValueError("T-place needs a prime p")
            if self.R is None or not self.R > 1:
                raise ValueError(f"T-place needs radius R > 1 (got {self.R})")
        elif self.theta is None or self.theta < 0:
            raise ValueError("S-place needs a growth base theta >= 0")

    def factor(self) -> float:
        if self.kind == "archimedean":
            return (1 + self.theta) ** self.degree
        if self.kind == "finite-S":
            return max(1.0, self.theta) ** self.degree
        return (self.p ** (1 / (self.p - 1)) * self.R) ** (-self.degree)


@dataclass(frozen=True)
class ThresholdVerdict:
    lhs: float
    rhs: float
    satisfied: bool
    margin: float
    boundary: bool = False

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "margin": self.margin,
            "boundary": self.boundary,
        }


def threshold_check(places: Sequence[PlaceDescriptor], degree: int, m: int) -> ThresholdVerdict:
    """Compare the product of place factors with ``exp(degree * H_m)``.

    ``margin`` is ``(rhs - lhs) / rhs``; verdicts with ``|margin| <= 1e-9`` are
    flagged as ``boundary`` because the inequality is strict.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    lhs = math.prod(pl.factor() for pl in places)
    rhs = math.exp(degree * float(harmonic(m)))
    margin = (rhs - lhs) / rhs
    return ThresholdVerdict(lhs, rhs, lhs < rhs, margin, abs(margin) <= BOUNDARY_BAND)


def _iroot(a: int, k: int) -> int:
    # floor of the k-th root of a >= 0
    if a < 2:
        return a
    x = 1 << -(-a.bit_length() // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _abs_root(x: Fraction, k: int) -> float:
    a, b = abs(x.numerator), x.denominator
    if a == 0:
        return 0.0
    ra, rb = _iroot(a, k), _iroot(b, k)
    if ra**k == a and rb**k == b:
        return ra / rb
    return math.exp((math.log(a) - math.log(b)) / k)


def growth_estimate(s) -> float:
    """Estimate the growth base as ``max |s(n)|^(1/n)`` over the upper half of the prefix.

    No finite prefix determines the true base; this is only a heuristic lower
    estimate.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    if N < 8:
        raise ValueError("growth estimate needs N >= 8")
    if not any(vals):
        raise ValueError("growth estimate of an all-zero prefix")
    return max(_abs_root(vals[n], n) for n in range(max((N + 1) // 2, 1), N + 1))


def growth_threshold(m: int) -> float:
    return math.exp(float(harmonic(m))) - 1


def extremal_sequence(m: int, N: int) -> SequencePrefix:
    """Sequence with ``c(n) = prod_{p <= n} p^tau_{p,m}(n)`` for ``n >= m`` and ``c(n) = 0`` below."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if N < 0:
        raise ValueError("N must be a natural number")
    primes = [int(p) for p in sieve(max(N, 2)).primes]
    c = []
    for n in range(N + 1):
        if n < m:
            c.append(0)
            continue
        v = 1
        for p in primes:
            if p > n:
                break
            v *= p ** tau(p, m, n)
        c.append(v)
    return inverse_binomial_transform(c, spec=f"extremal:{m}")


def hall_ruzsa_report(s, m: int, tail_window: Optional[int] = None) -> dict:
    """Run the integrality, growth and polynomiality gates on a prefix.

    Verdicts:

    ``consistent-polynomial``
        the difference tail vanishes and the candidate reproduces the prefix.
    ``hypothesis-violation``
        ``delta^m s`` is not integral on the prefix; every failed hypothesis is listed.
    ``inconclusive``
        integrality holds but the tail is non-zero.  Flagged ``extremal`` when the
        growth estimate reaches the threshold, ``prefix-too-short`` otherwise.

    ``tail_window`` defaults to half the prefix.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    if N < 2 * m + 4:
        raise ValueError(f"prefix too short: need N >= 2m+4 (N={N}, m={m})")
    if tail_window is None:
        tail_window = N // 2
    integ = integrality_report(vals, m)
    threshold = growth_threshold(m)
    theta = growth_estimate(vals) if any(vals) else 0.0
    cert = polynomiality_certificate(vals, tail_window)
    hypotheses = [
        {"name": "integrality", "passed": integ.passed, "failing_primes": integ.failing},
        {
            "name": "growth",
            "passed": theta < threshold,
            "estimate": theta,
            "threshold": threshold,
            "note": "estimate",
        },
    ]
    evidence: List[dict] = []
    flags: List[str] = []
    if isinstance(cert, Polynomial):
        verdict = "consistent-polynomial"
        evidence.append(
            {
                "certificate": "polynomial",
                "degree": cert.degree,
                "binomial_coefficients": [format_rational(x) for x in cert.binomial_coefficients],
                "tail_window": tail_window,
            }
        )
    else:
        evidence.append({"certificate": "witness", "n": cert.n, "c": format_rational(cert.value)})
        if not integ.passed:
            verdict = "hypothesis-violation"
        else:
            verdict = "inconclusive"
            flags.append("extremal" if theta >= threshold else "prefix-too-short")
    violated = [h["name"] for h in hypotheses if not h["passed"]]
    return {
        "verdict": verdict,
        "violated": violated if verdict == "hypothesis-violation" else [],
        "flags": flags,
        "hypotheses": hypotheses,
        "evidence": evidence,
        "seed": None,
        "m": m,
        "N": N,
    }


class LocalApproxError(ArithmeticError):
    """A residual ``s(n) - f(n)`` was not divisible by ``eps**m``."""

    def __init__(self, n, q, residual):
        super().__init__(f"residual {format_rational(residual)} at n={n} fails divisibility at prime {q}")
        self.n = n
        self.q = q
        self.residual = residual


@dataclass(frozen=True)
class LocalApprox:
    n0: int
    eps: int
    m: int
    f: NewtonForm
    residual_valuations: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n0": self.n0,
            "eps": self.eps,
            "m": self.m,
            "nodes": list(self.f.nodes),
            "coefficients": [format_rational(x) for x in self.f.coefficients],
            "evidence": self.residual_valuations,
        }


def local_approx(s, m: int, n0: int, eps: int) -> LocalApprox:
    """Degree ``< m`` Newton interpolant on ``n0, n0+eps, ...`` and its residual check.

    For every in-prefix ``n = n0 + k*eps`` the residual ``s(n) - f(n)`` must be an
    integer multiple of ``eps**m``; the per-prime valuations at primes dividing
    ``eps`` are recorded as evidence.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    if m < 1:
        raise ValueError("m must be at least 1")
    if eps < 1:
        raise ValueError("eps must be a positive integer")
    nodes = [n0 + k * eps for k in range(m)]
    if n0 < 0 or nodes[-1] > N:
        raise ValueError(f"nodes {nodes} do not fit in prefix 0..{N}")
    if not integrality_report(vals, m).passed:
        raise ValueError(f"delta^{m} s is not integral on the prefix")
    f = newton_interpolate(vals, nodes)
    eps_primes = [int(q) for q in primefactors(eps)]
    evidence = []
    for n in range(n0, N + 1, eps):
        r = vals[n] - f(n)
        scaled = r / eps**m
        if scaled.denominator != 1:
            bad = [q for q in eps_primes if vp(r, q) < m * vp(eps, q)]
            q = bad[0] if bad else int(primefactors(scaled.denominator)[0])
            raise LocalApproxError(n, q, r)
        evidence.append(
            {
                "n": n,
                "residual": format_rational(r),
                "valuations": {str(q): format_valuation(vp(r, q)) for q in eps_primes},
                "required": {str(q): m * vp(eps, q) for q in eps_primes},
            }
        )
    return LocalApprox(n0, eps, m, f, evidence)


def local_gcd_identity(approx: LocalApprox, s) -> tuple:
    """``(gcd f(n0 + eps*y) for y < m, gcd eps^k k! delta^k s(n0..n_k) for k < m)``.

    Both components generate the same ideal; a gcd over zeros only is 0.
    """
    vals = _as_values(s)
    n0, eps, m = approx.n0, approx.eps, approx.m
    lhs = rational_gcd(approx.f(n0 + eps * y) for y in range(m))
    rhs = rational_gcd(
        eps**k * math.factorial(k) * divided_difference(vals, [n0 + i * eps for i in range(k + 1)]) for k in range(m)
    )
    return lhs, rhs


def lipschitz_check(s, m: int, p: int, samples: int, seed: int = 0) -> dict:
    """Sample tuples and test ``v_p(dd_{m-1}(a_0..a_{m-1}) - dd_{m-1}(a_1..a_m)) >= v_p(a_0 - a_m)``."""
    vals = _as_values(s)
    N = len(vals) - 1
    if m < 2:
        raise ValueError("lipschitz check needs m >= 2")
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    norm = truncated_norm_rhs(vals, m, p)
    if norm.exponent > 0:
        raise ValueError(f"||delta^{m} s||_{p} = {p}^{norm.exponent} exceeds 1 on the prefix")
    rng = random.Random(seed)
    witnesses = []
    violations = 0
    for _ in range(samples):
        a = rng.sample(range(N + 1), m + 1)
        diff = divided_difference(vals, a[:-1]) - divided_difference(vals, a[1:])
        left, right = vp(diff, p), vp(a[0] - a[-1], p)
        if left < right:
            violations += 1
            if len(witnesses) < 10:
                witnesses.append({"tuple": a, "lhs_valuation": format_valuation(left), "rhs_valuation": right})
    return {
        "verdict": "pass" if violations == 0 else "fail",
        "hypotheses": [{"name": "norm", "p": p, "exponent": format_valuation(norm.exponent), "passed": True}],
        "evidence": witnesses,
        "violations": violations,
        "samples": samples,
        "seed": seed,
        "m": m,
        "p": p,
    }
