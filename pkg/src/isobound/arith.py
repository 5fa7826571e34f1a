"""Small integer helpers shared across modules."""

from __future__ import annotations

import math
from functools import reduce

from sympy import factorint


def factor(n: int) -> dict[int, int]:
    if n == 0:
        raise ValueError("cannot factor 0")
    return {int(p): int(e) for p, e in factorint(abs(n)).items()}


def radical(n: int) -> int:
    """Product of the distinct primes dividing n (rad(1) = 1)."""
    return reduce(lambda x, y: x * y, factor(n), 1)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factor(n).values())


def valuation(n: int, p: int) -> int:
    """p-adic valuation; math.inf for n == 0."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def v2_mod(x: int, k: int) -> int:
    """2-adic valuation of x as an element of Z/2^k (returns k for 0)."""
    x %= 1 << k
    if x == 0:
        return k
    return (x & -x).bit_length() - 1


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]
