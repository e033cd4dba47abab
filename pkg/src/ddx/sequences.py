"""Sequence generator strings.

``poly:c0,c1,...``
    ``s(n) = c0 + c1*n + c2*n**2 + ...`` with rational coefficients.
``binom:b0,b1,...``
    prescribed difference coefficients ``c(n) = b_n`` (zero beyond the list).
``exp:q``
    ``s(n) = q**n`` for a rational ``q``.
``extremal:m``
    :func:`ddx.checker.extremal_sequence`.
``file:PATH``
    one rational per line; blank lines and ``#`` comments are skipped.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from ddx.core import parse_rational
from ddx.difference import SequencePrefix, inverse_binomial_transform

KINDS = ("poly", "binom", "exp", "extremal", "file")


def _rationals(body: str):
    parts = [x for x in body.split(",") if x.strip()]
    if not parts:
        raise ValueError("empty coefficient list")
    return [parse_rational(x) for x in parts]


def parse_sequence(spec: str, N: Optional[int] = None) -> SequencePrefix:
    """Build ``s(0..N)`` from a generator string.

    ``N`` may be omitted only for ``file:`` sequences, which then keep every
    line.
    """
    kind, sep, body = spec.partition(":")
    if not sep or kind not in KINDS:
        raise ValueError(f"unknown sequence spec {spec!r}; expected one of {', '.join(k + ':' for k in KINDS)}")
    if kind == "file":
        with open(body, encoding="utf-8") as fh:
            lines = [ln.split("#", 1)[0].strip() for ln in fh]
        vals = [parse_rational(ln) for ln in lines if ln]
        if N is not None:
            if len(vals) < N + 1:
                raise ValueError(f"{body} holds {len(vals)} values, need {N + 1}")
            vals = vals[: N + 1]
        return SequencePrefix(tuple(vals), spec)
    if N is None or N < 0:
        raise ValueError("prefix length N must be a natural number")
    if kind == "poly":
        coefs = _rationals(body)
        vals = []
        for n in range(N + 1):
            acc = Fraction(0)
            for co in reversed(coefs):
                acc = acc * n + co
            vals.append(acc)
        return SequencePrefix(tuple(vals), spec)
    if kind == "binom":
        b = _rationals(body)
        c = (b + [Fraction(0)] * (N + 1))[: N + 1]
        return inverse_binomial_transform(c, spec)
    if kind == "exp":
        q = parse_rational(body)
        return SequencePrefix(tuple(q**n for n in range(N + 1)), spec)
    from ddx.checker import extremal_sequence

    return extremal_sequence(int(body), N)
