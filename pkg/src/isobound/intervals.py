"""Outward-rounded interval helpers on top of :mod:`mpmath`'s interval context.

Every real quantity that involves a logarithm is carried as an mpmath interval;
rational inputs are kept as :class:`fractions.Fraction` until the last moment.
Endpoints are read back as exact fractions, so ceilings, floors and
comparisons never go through binary floating point.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath import ctx_iv
from mpmath.libmp import to_rational

DEFAULT_PREC = 256

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def context(prec: int = DEFAULT_PREC) -> ctx_iv.MPIntervalContext:
    # private contexts so callers changing mpmath.iv.prec cannot affect us
    ctx = ctx_iv.MPIntervalContext()
    ctx.prec = prec
    return ctx


def to_fraction(x) -> Fraction:
    """Exact conversion of int / str / Decimal / Fraction to a Fraction.

    Floats are rejected on purpose: table constants must be decimal-exact.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, (str, Decimal)):
        return Fraction(Decimal(str(x).strip()))
    raise TypeError(f"cannot convert {type(x).__name__} exactly; pass a str, int, Decimal or Fraction")


def is_interval(x) -> bool:
    return hasattr(x, "_mpi_")


def exact(q: Rational, prec: int = DEFAULT_PREC):
    """Tightest interval enclosing the rational ``q``."""
    q = Fraction(q)
    ctx = context(prec)
    return ctx.mpf(q.numerator) / q.denominator


def lift(x, prec: int = DEFAULT_PREC):
    """Turn a rational or an interval into an interval at ``prec``."""
    if is_interval(x):
        return x
    return exact(to_fraction(x), prec)


def log(x, prec: int = DEFAULT_PREC):
    """Natural logarithm enclosure of a positive rational or interval."""
    if not is_interval(x):
        q = to_fraction(x)
        if q <= 0:
            raise ValueError("log of a non-positive number")
        if q == 1:
            return context(prec).mpf(0)
    return context(prec).log(lift(x, prec))


def endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact (lower, upper) endpoints of an interval, or (q, q) for a rational."""
    if not is_interval(x):
        q = to_fraction(x)
        return q, q
    lo, hi = x._mpi_
    (ln, ld), (hn, hd) = to_rational(lo), to_rational(hi)
    return Fraction(int(ln), int(ld)), Fraction(int(hn), int(hd))


def lower(x) -> Fraction:
    return endpoints(x)[0]


def upper(x) -> Fraction:
    return endpoints(x)[1]


def ceil_upper(x) -> int:
    """Smallest integer that is certainly >= the enclosed value."""
    return math.ceil(upper(x))


def floor_lower(x) -> int:
    """Largest integer that is certainly <= the enclosed value."""
    return math.floor(lower(x))


def certainly_le(x, y) -> bool:
    """True when x <= y holds at the pessimistic endpoints."""
    return upper(x) <= lower(y)


def certainly_lt(x, y) -> bool:
    return upper(x) < lower(y)


def exact_floor(build, start_prec: int = 128, max_prec: int = 8192) -> int:
    """floor of a real given by ``build(prec) -> interval``.

    Precision is doubled until both endpoints share a floor. Raises if the
    value looks like an exact integer that intervals cannot separate.
    """
    prec = start_prec
    while prec <= max_prec:
        lo, hi = endpoints(build(prec))
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        prec *= 2
    raise ArithmeticError("could not isolate the floor; value may be an exact integer")


def exact_ceil(build, start_prec: int = 128, max_prec: int = 8192) -> int:
    """ceil of a real given by ``build(prec) -> interval`` (see :func:`exact_floor`)."""
    prec = start_prec
    while prec <= max_prec:
        lo, hi = endpoints(build(prec))
        if math.ceil(lo) == math.ceil(hi):
            return math.ceil(hi)
        prec *= 2
    raise ArithmeticError("could not isolate the ceiling; value may be an exact integer")
