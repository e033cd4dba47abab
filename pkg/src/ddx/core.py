"""Exact arithmetic substrate: rationals, p-adic valuations, binomials, harmonic numbers.

Rationals are :class:`fractions.Fraction`, which is always stored reduced with a
positive denominator, so structural equality and hashing are exact.

Valuations live in ``Z ∪ {+inf}``.  The infinite element is ``math.inf``: it
absorbs integer addition, ``min(INF, x) == x`` and it compares totally against
ints, which is all the algorithms need.  Norms are never materialized as floats;
code compares integer exponents instead.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
INF = math.inf

RationalLike = Union[int, Fraction]

# deterministic Miller-Rabin witnesses for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 1 << 20


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Trial division for small inputs, deterministic Miller-Rabin above ``2**20``.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    if n < _TRIAL_LIMIT:
        d = 3
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def _vp_int(n: int, p: int) -> int:
    # n != 0
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: RationalLike, p: int):
    """p-adic valuation of a rational; ``INF`` for zero.

    >>> vp(8, 2)
    3
    >>> vp(Fraction(-3, 2), 2)
    -1
    """
    _check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def binomial(n: int, k: int) -> int:
    """C(n, k) for naturals, zero when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be natural numbers")
    return math.comb(n, k)


@lru_cache(maxsize=None)
def harmonic(m: int) -> Fraction:
    """Exact harmonic number ``1 + 1/2 + ... + 1/m``; ``harmonic(0) == 0``."""
    if m < 0:
        raise ValueError("m must be a natural number")
    if m == 0:
        return Fraction(0)
    return harmonic(m - 1) + Fraction(1, m)


def format_rational(x: RationalLike) -> str:
    """Serialize as ``"num/den"``, or ``"num"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts a Unicode minus sign."""
    text = text.strip().replace("−", "-")
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def rational_gcd(values) -> Fraction:
    """Non-negative generator of the fractional ideal spanned by ``values``.

    An empty or all-zero collection has gcd 0.
    """
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        if v == 0:
            continue
        num = math.gcd(num, v.numerator)
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den)


def format_valuation(v) -> Union[int, str]:
    """JSON-friendly form of an extended integer: ints stay ints, infinities become strings."""
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return int(v)
