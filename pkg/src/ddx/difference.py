"""Finite differences, divided differences and Newton interpolation on sequence prefixes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ddx.core import binomial


@dataclass(frozen=True)
class SequencePrefix:
    """Values ``s(0), ..., s(N)`` of a sequence, with an optional generator description."""

    values: Tuple[Fraction, ...]
    spec: Optional[str] = None

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if not vals:
            raise ValueError("a sequence prefix must be non-empty")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, func, N: int, spec: Optional[str] = None) -> "SequencePrefix":
        return cls(tuple(Fraction(func(n)) for n in range(N + 1)), spec)

    @property
    def N(self) -> int:
        """Index of the last stored value."""
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


def _as_values(s) -> Tuple[Fraction, ...]:
    if isinstance(s, SequencePrefix):
        return s.values
    return tuple(Fraction(v) for v in s)


def canonical_tuple(entries: Iterable[int]) -> Tuple[int, ...]:
    """Sort distinct naturals into increasing order; reject repeats and negatives."""
    t = tuple(sorted(int(e) for e in entries))
    if not t:
        raise ValueError("tuple must have at least one entry")
    if t[0] < 0:
        raise ValueError("tuple entries must be natural numbers")
    if any(a == b for a, b in zip(t, t[1:])):
        raise ValueError(f"tuple entries must be distinct: {t}")
    return t


def finite_differences(s) -> List[Fraction]:
    """Binomial-basis coefficients ``c(n) = sum_k C(n,k) (-1)^(n-k) s(k)``.

    Computed with the forward difference triangle rather than the binomial sum.
    """
    row = list(_as_values(s))
    out = [row[0]]
    while len(row) > 1:
        row = [b - a for a, b in zip(row, row[1:])]
        out.append(row[0])
    return out


def finite_differences_by_sum(s) -> List[Fraction]:
    """The defining binomial sum, kept as an independent check of :func:`finite_differences`."""
    vals = _as_values(s)
    return [
        sum((binomial(n, k) * (-1) ** (n - k) * vals[k] for k in range(n + 1)), Fraction(0))
        for n in range(len(vals))
    ]


def inverse_binomial_transform(c, spec: Optional[str] = None) -> SequencePrefix:
    """``s(n) = sum_k C(n,k) c(k)``."""
    cs = _as_values(c)
    vals = []
    for n in range(len(cs)):
        total = Fraction(0)
        b = 1
        for k in range(n + 1):
            total += b * cs[k]
            b = b * (n - k) // (k + 1)
        vals.append(total)
    return SequencePrefix(tuple(vals), spec)


def _check_nodes(vals, t) -> Tuple[int, ...]:
    t = tuple(int(x) for x in t)
    if not t:
        raise ValueError("tuple must have at least one entry")
    if len(set(t)) != len(t):
        raise ValueError(f"tuple entries must be distinct: {t}")
    for x in t:
        if x < 0 or x >= len(vals):
            raise ValueError(f"tuple entry {x} outside prefix 0..{len(vals) - 1}")
    return t


def divided_difference(s, t: Sequence[int]) -> Fraction:
    """``sum_i s(n_i) / prod_{j != i} (n_i - n_j)`` over the entries of ``t``.

    ``t`` may be given in any order; the value is symmetric in its entries.
    """
    vals = _as_values(s)
    t = _check_nodes(vals, t)
    total = Fraction(0)
    for i, ni in enumerate(t):
        den = 1
        for j, nj in enumerate(t):
            if j != i:
                den *= ni - nj
        total += vals[ni] / den
    return total


def divided_difference_recursive(s, t: Sequence[int]) -> Fraction:
    """Same value as :func:`divided_difference`, built from the two-point recursion."""
    vals = _as_values(s)
    t = _check_nodes(vals, t)
    col = [vals[x] for x in t]
    for k in range(1, len(t)):
        col = [(col[i + 1] - col[i]) / (t[i + k] - t[i]) for i in range(len(col) - 1)]
    return col[0]


@dataclass(frozen=True)
class NewtonForm:
    """Newton interpolant ``sum_k coefficients[k] * prod_{j<k} (x - nodes[j])``."""

    nodes: Tuple[int, ...]
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.nodes) != len(self.coefficients):
            raise ValueError("nodes and coefficients must have equal length")

    @property
    def degree_bound(self) -> int:
        return len(self.nodes) - 1

    def __call__(self, x: Union[int, Fraction]) -> Fraction:
        # Horner scheme on the nested Newton form
        acc = Fraction(0)
        for node, coef in zip(reversed(self.nodes), reversed(self.coefficients)):
            acc = acc * (x - node) + coef
        return acc


def newton_interpolate(s, nodes: Sequence[int]) -> NewtonForm:
    vals = _as_values(s)
    nodes = _check_nodes(vals, nodes)
    col = [vals[x] for x in nodes]
    coefs = [col[0]]
    for k in range(1, len(nodes)):
        col = [(col[i + 1] - col[i]) / (nodes[i + k] - nodes[i]) for i in range(len(col) - 1)]
        coefs.append(col[0])
    return NewtonForm(nodes, tuple(coefs))


@dataclass(frozen=True)
class Polynomial:
    """A prefix that is reproduced by a polynomial whose difference tail vanishes."""

    binomial_coefficients: Tuple[Fraction, ...]
    newton: NewtonForm
    window: int

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.binomial_coefficients) - 1


@dataclass(frozen=True)
class Witness:
    """Largest index ``n`` with ``c(n) != 0``; the prefix is not certified polynomial."""

    n: int
    value: Fraction = field(default=Fraction(0))


def polynomiality_certificate(s, tail_window: int) -> Union[Polynomial, Witness]:
    """Check whether ``c`` vanishes on the last ``tail_window`` indices.

    This is only a prefix-scale gate: a finite prefix never proves a sequence
    polynomial.  A :class:`Polynomial` means the candidate from the non-zero
    head of ``c`` reproduces every given value.
    """
    vals = _as_values(s)
    N = len(vals) - 1
    if tail_window < 0 or tail_window > N:
        raise ValueError(f"tail window must lie in 0..{N}")
    c = finite_differences(vals)
    nonzero = [n for n, v in enumerate(c) if v != 0]
    last = nonzero[-1] if nonzero else -1
    if last > N - tail_window:
        return Witness(last, c[last])
    head = tuple(c[: last + 1])
    rebuilt = inverse_binomial_transform(head + (Fraction(0),) * (N - last)).values
    if rebuilt != vals:
        return Witness(last, c[last])
    # Newton coefficients on nodes 0..d are c(k)/k!
    d = max(last, 0)
    fact = 1
    coefs = []
    for k in range(d + 1):
        if k:
            fact *= k
        coefs.append((head[k] if k < len(head) else Fraction(0)) / fact)
    return Polynomial(head, NewtonForm(tuple(range(d + 1)), tuple(coefs)), tail_window)
