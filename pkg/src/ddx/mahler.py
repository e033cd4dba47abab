"""Generalized Mahler coefficients of divided differences and their p-adic sizes.

Everything here works at a finite truncation.  A prefix ``s(0..N)`` fixes
``c(0..N)``, the divided differences on tuples inside ``{0..N}`` and the
Mahler coefficients ``C(j)`` with ``sum(j) + m <= N``; the sup-norms become
maxima over those ranges and are reported with the range they were taken on.
Norms are carried as integer exponents ``e`` with ``|x|_p = p**e``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Optional, Tuple, Union

from sympy import primefactors

from ddx.core import INF, format_rational, format_valuation, vp
from ddx.difference import SequencePrefix, _as_values, divided_difference, finite_differences
from ddx.tau import sieve, tau_greedy


def tuple_bijection(a) -> Tuple[int, ...]:
    """Map ``a in N^(m+1)`` to a strictly increasing tuple of distinct naturals.

    ``n_m = a_m`` and ``n_k = n_{k+1} + a_k + 1``; the resulting decreasing
    tuple ``(n_0, ..., n_m)`` is returned reversed.
    """
    a = tuple(int(x) for x in a)
    if not a or min(a) < 0:
        raise ValueError("point must be a non-empty tuple of naturals")
    ns = [a[-1]]
    for ak in reversed(a[:-1]):
        ns.append(ns[-1] + ak + 1)
    return tuple(ns)


def _simplex(dim: int, total: int):
    """All ``j in N^dim`` with ``sum(j) <= total``."""
    if dim == 1:
        for x in range(total + 1):
            yield (x,)
        return
    for x in range(total + 1):
        for rest in _simplex(dim - 1, total - x):
            yield (x,) + rest


@dataclass(frozen=True)
class MahlerCoefficients:
    m: int
    N: int
    coefficients: Dict[Tuple[int, ...], Fraction]

    def __getitem__(self, j):
        return self.coefficients[tuple(j)]


def schikhof_denominator(j) -> int:
    """``(j_0+1)(j_0+j_1+2)...(j_0+...+j_{m-1}+m)``; ``j_m`` does not enter.

    Partial sums start at ``j_0`` because :func:`tuple_bijection` builds the
    tuple outward from ``a_m``.  Either order runs over the same set of
    denominators ``i_1 < ... < i_m <= sum(j) + m``.
    """
    m = len(j) - 1
    den = 1
    partial = 0
    for k in range(m):
        partial += j[k]
        den *= partial + k + 1
    return den


def schikhof_coefficients(s, m: int) -> MahlerCoefficients:
    """Mahler coefficients of ``a -> delta^m s(tuple_bijection(a))`` for ``sum(j) + m <= N``."""
    vals = _as_values(s)
    N = len(vals) - 1
    if m < 1:
        raise ValueError("m must be at least 1")
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    c = finite_differences(vals)
    coeffs = {j: c[sum(j) + m] / schikhof_denominator(j) for j in _simplex(m + 1, N - m)}
    return MahlerCoefficients(m, N, coeffs)


def mahler_reconstruct(C: MahlerCoefficients, a) -> Fraction:
    """Finite Mahler sum ``sum_j C(j) prod_i binom(a_i, j_i)`` at the point ``a``."""
    a = tuple(int(x) for x in a)
    if len(a) != C.m + 1:
        raise ValueError(f"point must have {C.m + 1} coordinates")
    if min(a) < 0:
        raise ValueError("point coordinates must be natural numbers")
    if sum(a) + C.m > C.N:
        raise ValueError(f"point {a} needs coefficients beyond truncation N={C.N}")
    total = Fraction(0)
    for j in product(*(range(x + 1) for x in a)):
        coef = C.coefficients[j]
        if coef:
            w = 1
            for x, y in zip(a, j):
                w *= math.comb(x, y)
            total += coef * w
    return total


@dataclass(frozen=True)
class NormValue:
    """Truncated sup-norm ``p**exponent``; ``exponent == -inf`` when every value is zero.

    ``attained_at`` is the index ``n`` or tuple where the maximum is first reached
    and ``range`` records the truncation the maximum was taken over.
    """

    p: int
    exponent: Union[int, float]
    attained_at: Optional[object] = None
    range: Tuple[int, int] = (0, 0)

    def to_json(self) -> dict:
        at = self.attained_at
        return {
            "exponent": format_valuation(self.exponent),
            "attained_at_n": list(at) if isinstance(at, tuple) else at,
            "range": list(self.range),
        }


def truncated_norm_rhs(s, m: int, p: int) -> NormValue:
    """``max_{m <= n <= N} tau_{p,m}(n) - v_p(c(n))`` as an exponent of ``p``."""
    vals = _as_values(s)
    N = len(vals) - 1
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    c = finite_differences(vals)
    best, at = -INF, None
    for n in range(m, N + 1):
        if c[n] == 0:
            continue
        e = tau_greedy(p, m, n) - vp(c[n], p)
        if e > best:
            best, at = e, n
    return NormValue(p, best, at, (m, N))


def bruteforce_norm_lhs(s, m: int, p: int) -> NormValue:
    """``max -v_p(delta^m s(t))`` over increasing ``(m+1)``-tuples inside the prefix."""
    vals = _as_values(s)
    N = len(vals) - 1
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    best, at = -INF, None
    for t in combinations(range(N + 1), m + 1):
        d = divided_difference(vals, t)
        if d == 0:
            continue
        e = -vp(d, p)
        if e > best:
            best, at = e, t
    return NormValue(p, best, at, (0, N))


def _denominator_primes(values) -> set:
    primes = set()
    for v in values:
        den = Fraction(v).denominator
        if den > 1:
            primes.update(int(q) for q in primefactors(den))
    return primes


def candidate_primes(s) -> list:
    """Primes that can make ``delta^m s`` non-integral on the prefix.

    Primes ``p <= N`` plus any prime dividing a denominator of ``c(0..N)``; for
    every other prime ``tau_{p,m}(n) = 0`` on the prefix and ``c(n)`` is
    p-integral.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    primes = _denominator_primes(finite_differences(vals))
    if N >= 2:
        primes.update(int(q) for q in sieve(N).primes)
    return sorted(primes)


@dataclass
class IntegralityReport:
    m: int
    N: int
    norms: Dict[int, NormValue] = field(default_factory=dict)

    @property
    def failing(self) -> list:
        return [p for p, nv in self.norms.items() if nv.exponent > 0]

    @property
    def passed(self) -> bool:
        return not self.failing

    @property
    def verdict(self) -> str:
        return "prefix-integral" if self.passed else "not-integral"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "N": self.N,
            "primes": {str(p): nv.to_json() for p, nv in sorted(self.norms.items())},
            "failing": self.failing,
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def integrality_report(s, m: int) -> IntegralityReport:
    """Per-prime truncated norm of ``delta^m s``; prefix-integral iff every exponent is ``<= 0``."""
    vals = _as_values(s)
    N = len(vals) - 1
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    report = IntegralityReport(m, N)
    for p in candidate_primes(vals):
        report.norms[p] = truncated_norm_rhs(vals, m, p)
    return report


def clearing_constant(s, m: int) -> int:
    """``prod_p max(1, |c(0)/0!|_p, ..., |c(m)/m!|_p)``.

    When ``delta^{m+1} s`` is integer-valued, this integer clears the
    denominators of ``delta^k s`` for every ``k <= m``.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    if N < m:
        raise ValueError(f"prefix too short: need N >= m (N={N}, m={m})")
    c = finite_differences(vals)
    scaled = [c[k] / math.factorial(k) for k in range(m + 1)]
    C = 1
    for p in sorted(_denominator_primes(scaled)):
        e = max(-vp(x, p) for x in scaled if x != 0)
        if e > 0:
            C *= p**e
    return C


def coefficients_json(C: MahlerCoefficients) -> dict:
    return {
        "m": C.m,
        "N": C.N,
        "coefficients": [{"j": list(j), "C": format_rational(v)} for j, v in sorted(C.coefficients.items())],
    }
