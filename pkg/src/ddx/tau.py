"""The function tau_{p,m}(n), prime tables and prime-weighted sums.

``tau_{p,m}(n)`` is the largest p-adic valuation of a product of ``m``
distinct integers in ``1..n``.  Three routes are provided: subset
enumeration (oracle), a greedy count over valuation classes (valid for all
``p`` and ``m``) and the closed formula in the top base-p digit (valid for
``p >= m``).
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence

import numpy as np

from ddx.core import harmonic, is_prime

MAX_SIEVE_LIMIT = 2 * 10**9
BRUTEFORCE_MAX_SUBSETS = 2_000_000
LCM_CHECK_MAX_N = 10**4
_SEGMENT = 1 << 21


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def _check_query(p, m, n):
    _check_prime(p)
    if m < 0:
        raise ValueError("m must be a natural number")
    if n < m:
        raise ValueError(f"tau needs n >= m (got n={n}, m={m})")


def floor_log(p: int, n: int) -> int:
    """Largest ``t`` with ``p**t <= n``, by integer multiplication only."""
    if n < 1:
        raise ValueError("floor_log needs n >= 1")
    t, pw = 0, p
    while pw <= n:
        pw *= p
        t += 1
    return t


def top_digit(p: int, n: int) -> int:
    """Leading digit of ``n`` in base ``p``."""
    if n < 1:
        raise ValueError("top_digit needs n >= 1")
    return n // p ** floor_log(p, n)


def tau_bruteforce(p: int, m: int, n: int) -> int:
    """Maximum of ``v_p(prod S)`` over all m-subsets ``S`` of ``{1..n}``.

    Only multiples of ``p`` can contribute, so subsets are drawn from them and
    padded with non-multiples; the enumeration is otherwise exhaustive.
    """
    _check_query(p, m, n)
    if m == 0:
        return 0
    multiples = list(range(p, n + 1, p))
    k = min(m, len(multiples))
    if math.comb(len(multiples), k) > BRUTEFORCE_MAX_SUBSETS:
        raise ValueError(f"brute force too large for (p={p}, m={m}, n={n})")
    vals = []
    for x in multiples:
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        vals.append(v)
    best = 0
    for combo in combinations(range(len(vals)), k):
        best = max(best, sum(vals[i] for i in combo))
    return best


def tau_greedy(p: int, m: int, n: int) -> int:
    """Sum of the ``m`` largest values of ``v_p(i)``, ``1 <= i <= n``."""
    _check_query(p, m, n)
    if m == 0:
        return 0
    remaining = m
    total = 0
    t = floor_log(p, n)
    upper = 0  # n // p**(t+1)
    while remaining and t > 0:
        here = n // p**t
        count = here - upper
        take = min(count, remaining)
        total += take * t
        remaining -= take
        upper = here
        t -= 1
    return total


def tau_formula_value(p: int, m: int, n: int) -> int:
    """Evaluate the top-digit closed form without checking ``p >= m``.

    Only equal to tau when ``p >= m``; exposed so the failure below that range
    can be exhibited.
    """
    t = floor_log(p, n)
    a = n // p**t
    if a >= m:
        return m * t
    return m * t + a - m


def tau_explicit(p: int, m: int, n: int) -> int:
    """Closed form of tau for ``m >= 1``, ``n >= m`` and ``p >= m``."""
    _check_query(p, m, n)
    if m < 1:
        raise ValueError("closed formula needs m >= 1")
    if p < m:
        raise ValueError(f"closed formula does not apply for p < m (p={p}, m={m}); use tau_greedy")
    return tau_formula_value(p, m, n)


def tau(p: int, m: int, n: int) -> int:
    """Dispatch to the closed formula when it applies, else the greedy count."""
    if m >= 1 and p >= m:
        return tau_explicit(p, m, n)
    return tau_greedy(p, m, n)


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray
    method: str = "segmented sieve"

    def __len__(self):
        return len(self.primes)

    def upto(self, n: int) -> np.ndarray:
        """Primes ``<= n`` (requires ``n <= limit``)."""
        if n > self.limit:
            raise ValueError(f"prime table covers only up to {self.limit}, asked for {n}")
        return self.primes[: np.searchsorted(self.primes, n, side="right")]


def _simple_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(low: int, high: int, base: np.ndarray) -> np.ndarray:
    # primes in [low, high)
    flags = np.ones(high - low, dtype=bool)
    for q in base:
        q = int(q)
        if q * q >= high:
            break
        start = max(q * q, -(-low // q) * q)
        flags[start - low :: q] = False
    return (np.flatnonzero(flags) + low).astype(np.int64)


def sieve(limit: int, threads: int = 1) -> PrimeTable:
    """All primes ``<= limit`` by a segmented sieve of Eratosthenes.

    Segments may be sieved on several threads; they are concatenated in range
    order, so the result does not depend on ``threads``.
    """
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    if limit > MAX_SIEVE_LIMIT:
        raise ValueError(f"sieve limit {limit} exceeds memory guard {MAX_SIEVE_LIMIT}")
    base_limit = max(math.isqrt(limit), 2)
    base = _simple_sieve(base_limit)
    low = base_limit + 1
    bounds = [(lo, min(lo + _SEGMENT, limit + 1)) for lo in range(low, limit + 1, _SEGMENT)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _sieve_segment(b[0], b[1], base), bounds))
    else:
        parts = [_sieve_segment(lo, hi, base) for lo, hi in bounds]
    head = base[base <= limit]
    return PrimeTable(limit, np.concatenate([head] + parts))


def chebyshev_theta(n: int, table: PrimeTable) -> float:
    """``sum_{p <= n} log p``, correctly rounded."""
    if n < 2:
        return 0.0
    return math.fsum(math.log(int(p)) for p in table.upto(n))


def _tau_vector(n: int, m: int, primes: np.ndarray) -> np.ndarray:
    # closed formula vectorized over primes p >= m, p <= n
    pw = primes.copy()
    t = np.zeros_like(primes)
    active = pw <= n
    while active.any():
        t += active
        pw[active] *= primes[active]
        active = pw <= n
    top = n // (pw // primes)
    tau = m * t
    short = top < m
    tau[short] += top[short] - m
    return tau


def _weighted_terms(n: int, m: int, primes: np.ndarray) -> np.ndarray:
    small = primes[primes < m]
    large = primes[primes >= m]
    taus = np.concatenate(
        [np.array([tau_greedy(int(p), m, n) for p in small], dtype=np.int64), _tau_vector(n, m, large)]
    )
    return taus * np.log(primes.astype(np.float64))


def tau_weighted_sum(n: int, m: int, table: PrimeTable, threads: int = 1) -> float:
    """``sum_{p <= n} tau_{p,m}(n) log p``.

    Terms are formed per prime (in chunks across threads if asked) and summed
    with :func:`math.fsum` in ascending prime order, so the result is
    bit-identical for every thread count.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 2:
        return 0.0
    if n < m:
        raise ValueError("tau needs n >= m")
    primes = table.upto(n)
    if threads > 1 and len(primes) > threads:
        chunks = np.array_split(primes, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            terms = np.concatenate(list(pool.map(lambda ch: _weighted_terms(n, m, ch), chunks)))
    else:
        terms = _weighted_terms(n, m, primes)
    return math.fsum(terms.tolist())


def lcm_identity_check(n: int) -> tuple:
    """``(prod_{p<=n} p**tau_{p,1}(n), lcm(1..n))``; the two are equal."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > LCM_CHECK_MAX_N:
        raise ValueError(f"n={n} exceeds big-integer guard {LCM_CHECK_MAX_N}")
    prod = 1
    if n >= 2:
        for p in sieve(n).primes:
            p = int(p)
            prod *= p ** tau_greedy(p, 1, n)
    return prod, math.lcm(*range(1, n + 1))


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    m: int
    sum: float
    target: float
    ratio: float

    @property
    def abs_err(self) -> float:
        return abs(self.target - self.sum)


def convergence_table(m: int, checkpoints: Iterable[int], table: PrimeTable, threads: int = 1) -> List[ConvergenceRow]:
    """Weighted tau sums against ``n * H_m`` at each checkpoint."""
    h = float(harmonic(m))
    rows = []
    for n in checkpoints:
        if n < 1:
            raise ValueError(f"checkpoint must be positive, got {n}")
        if n > table.limit:
            raise ValueError(f"checkpoint {n} beyond prime table limit {table.limit}")
        total = tau_weighted_sum(n, m, table, threads)
        target = n * h
        rows.append(ConvergenceRow(n, m, total, target, total / target))
    return rows


CSV_HEADER = ("n", "m", "sum", "target", "ratio", "abs_err")


def _g12(x: float) -> str:
    return f"{x:.12g}"


def convergence_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.n, r.m, _g12(r.sum), _g12(r.target), _g12(r.ratio), _g12(r.abs_err)])
    return buf.getvalue()
