"""Concrete group elements: permutations, 2x2 matrices mod m, semidirect pairs.

All three are frozen, hashable and totally ordered so that closures produce a
deterministic canonical element list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

Mat = tuple[int, int, int, int]  # row-major (a, b, c, d)


@dataclass(frozen=True, order=True)
class Perm:
    """Bijection of {0..n-1}; ``p * q`` applies ``q`` first."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")
        if len(self.images) > 16:
            raise ValueError("permutations are limited to degree 16")

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Perm":
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        """Build from 1-based cycles, e.g. ``Perm.from_cycles(4, (1, 2, 3))``."""
        img = list(range(n))
        for cyc in cycles:
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                img[x - 1] = y - 1
        return cls(tuple(img))

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)


def mat_mul(x: Mat, y: Mat, m: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)


def mat_det(x: Mat) -> int:
    return x[0] * x[3] - x[1] * x[2]


def mat_trace(x: Mat) -> int:
    return x[0] + x[3]


def mat_inv(x: Mat, m: int) -> Mat:
    dinv = pow(mat_det(x) % m, -1, m)
    a, b, c, d = x
    return ((d * dinv) % m, (-b * dinv) % m, (-c * dinv) % m, (a * dinv) % m)


def mat_add(x: Mat, y: Mat, m: int) -> Mat:
    return tuple((u + v) % m for u, v in zip(x, y))  # type: ignore[return-value]


def mat_sub(x: Mat, y: Mat, m: int) -> Mat:
    return tuple((u - v) % m for u, v in zip(x, y))  # type: ignore[return-value]


def mat_scale(x: Mat, s: int, m: int) -> Mat:
    return tuple((s * u) % m for u in x)  # type: ignore[return-value]


def mat_reduce(x: Iterable[int], m: int) -> Mat:
    return tuple(int(u) % m for u in x)  # type: ignore[return-value]


IDENTITY: Mat = (1, 0, 0, 1)
ZERO: Mat = (0, 0, 0, 0)


@dataclass(frozen=True, order=True)
class Mat2:
    """Invertible 2x2 matrix over Z/modulus, entries reduced to [0, modulus)."""

    modulus: int
    entries: Mat

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        red = mat_reduce(self.entries, self.modulus)
        object.__setattr__(self, "entries", red)
        if math.gcd(mat_det(red), self.modulus) != 1:
            raise ValueError(f"matrix {red} is not invertible mod {self.modulus}")

    @classmethod
    def of(cls, entries: Sequence[int], modulus: int) -> "Mat2":
        return cls(modulus, tuple(entries))  # type: ignore[arg-type]

    @classmethod
    def identity(cls, modulus: int) -> "Mat2":
        return cls(modulus, IDENTITY)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return Mat2(self.modulus, mat_mul(self.entries, other.entries, self.modulus))

    def __neg__(self) -> "Mat2":
        return Mat2(self.modulus, mat_scale(self.entries, -1, self.modulus))

    def inverse(self) -> "Mat2":
        return Mat2(self.modulus, mat_inv(self.entries, self.modulus))

    @property
    def det(self) -> int:
        return mat_det(self.entries) % self.modulus

    @property
    def trace(self) -> int:
        return mat_trace(self.entries) % self.modulus

    def reduce(self, modulus: int) -> "Mat2":
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return Mat2(modulus, self.entries)


# ------------------------------------------------------------------ F2 pieces

GL2_F2: tuple[Mat, ...] = tuple(
    x for x in product((0, 1), repeat=4) if mat_det(x) % 2 == 1  # type: ignore[misc]
)
M2_F2: tuple[Mat, ...] = tuple(product((0, 1), repeat=4))  # type: ignore[assignment]


@dataclass(frozen=True, order=True)
class SDPair:
    """Element (A, B) of M_2(F_2) x| GL_2(F_2) with (A,B)(C,D) = (A + B C B^-1, B D)."""

    A: Mat
    B: Mat

    def __post_init__(self):
        object.__setattr__(self, "A", mat_reduce(self.A, 2))
        object.__setattr__(self, "B", mat_reduce(self.B, 2))
        if mat_det(self.B) % 2 == 0:
            raise ValueError(f"B={self.B} is not invertible over F_2")

    @classmethod
    def identity(cls) -> "SDPair":
        return cls(ZERO, IDENTITY)

    def __mul__(self, other: "SDPair") -> "SDPair":
        conj = mat_mul(mat_mul(self.B, other.A, 2), mat_inv(self.B, 2), 2)
        return SDPair(mat_add(self.A, conj, 2), mat_mul(self.B, other.B, 2))

    def inverse(self) -> "SDPair":
        binv = mat_inv(self.B, 2)
        # (A,B)^-1 = (-B^-1 A B, B^-1); signs vanish over F_2
        return SDPair(mat_mul(mat_mul(binv, self.A, 2), self.B, 2), binv)

    @property
    def trace_zero(self) -> bool:
        return mat_trace(self.A) % 2 == 0

    def bits(self) -> tuple[int, int]:
        """Canonical (4-bit A, index of B in GL2_F2) form."""
        a = sum(bit << (3 - i) for i, bit in enumerate(self.A))
        return a, GL2_F2.index(self.B)
