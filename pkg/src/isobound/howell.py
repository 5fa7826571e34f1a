"""Howell normal form for row spans over Z/2^k.

A Howell basis is an echelon basis with pivots 2^e (entries above a pivot
reduced into [0, 2^e)) whose span also contains every multiple that kills a
pivot. That extra property makes reduction of a vector modulo the span
canonical, so membership, coset representatives and the module size can all
be read off the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def v2(x: int, k: int) -> int:
    """2-adic valuation of x mod 2^k, with v2(0) = k."""
    x %= 1 << k
    if x == 0:
        return k
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class HowellBasis:
    k: int
    ncols: int
    rows: tuple[Vector, ...]

    @property
    def modulus(self) -> int:
        return 1 << self.k

    def pivots(self) -> list[tuple[int, int]]:
        """(column, exponent e) of each row's leading entry 2^e."""
        out = []
        for r in self.rows:
            c = next(i for i, x in enumerate(r) if x)
            out.append((c, v2(r[c], self.k)))
        return out

    def log2_size(self) -> int:
        """log_2 of the number of elements in the span."""
        return sum(self.k - e for _, e in self.pivots())

    def size(self) -> int:
        return 1 << self.log2_size()

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of v modulo the span."""
        m = self.modulus
        v = [int(x) % m for x in v]
        if len(v) != self.ncols:
            raise ValueError(f"vector has length {len(v)}, expected {self.ncols}")
        for row, (c, e) in zip(self.rows, self.pivots()):
            q = v[c] >> e
            if q:
                v = [(a - q * b) % m for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def span(self) -> set[Vector]:
        """All elements (only for small modules)."""
        if self.log2_size() > 20:
            raise ValueError("span too large to enumerate")
        m = self.modulus
        out = set()
        pivots = self.pivots()
        ranges = [range(1 << (self.k - e)) for _, e in pivots]
        for coeffs in product(*ranges):
            v = [0] * self.ncols
            for a, row in zip(coeffs, self.rows):
                if a:
                    v = [(x + a * y) % m for x, y in zip(v, row)]
            out.add(tuple(v))
        return out

    def scaled(self, s: int) -> "HowellBasis":
        """Howell basis of s times the span."""
        return howell_form([[s * x for x in r] for r in self.rows], self.k, self.ncols)


def howell_form(rows: Iterable[Sequence[int]], k: int, ncols: int | None = None) -> HowellBasis:
    if k < 1:
        raise ValueError("k must be >= 1")
    m = 1 << k
    work = [[int(x) % m for x in r] for r in rows]
    if ncols is None:
        if not work:
            raise ValueError("ncols needed for an empty row list")
        ncols = len(work[0])
    if any(len(r) != ncols for r in work):
        raise ValueError("rows have different lengths")
    work = [r for r in work if any(r)]
    done: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in work if r[c]]
        if not live:
            continue
        piv = min(live, key=lambda r: v2(r[c], k))
        work = [r for r in work if r is not piv]
        e = v2(piv[c], k)
        unit = piv[c] >> e
        inv = pow(unit, -1, m)
        piv = [(x * inv) % m for x in piv]
        new_work = []
        for r in work:
            if r[c]:
                q = r[c] >> e
                r = [(a - q * b) % m for a, b in zip(r, piv)]
            if any(r):
                new_work.append(r)
        work = new_work
        if e:
            ann = [(x << (k - e)) % m for x in piv]
            if any(ann):
                work.append(ann)
        for i, r in enumerate(done):
            q = r[c] >> e
            if q:
                done[i] = [(a - q * b) % m for a, b in zip(r, piv)]
        done.append(piv)
    return HowellBasis(k, ncols, tuple(tuple(r) for r in done))


def kernel(rows: Sequence[Sequence[int]], k: int, ncols: int | None = None) -> HowellBasis:
    """Howell basis of {x : x A = 0 mod 2^k}, A given by its rows."""
    nrows = len(rows)
    if ncols is None:
        if not rows:
            raise ValueError("ncols needed for an empty matrix")
        ncols = len(rows[0])
    aug = [list(r) + [int(i == j) for j in range(nrows)] for i, r in enumerate(rows)]
    H = howell_form(aug, k, ncols + nrows)
    ker = [r[ncols:] for r in H.rows if not any(r[:ncols])]
    return howell_form(ker, k, nrows)


def brute_force_span(rows: Sequence[Sequence[int]], k: int, ncols: int) -> set[Vector]:
    """Span by closing under addition and scaling (test oracle)."""
    m = 1 << k
    span = {tuple([0] * ncols)}
    gens = [tuple(int(x) % m for x in r) for r in rows]
    frontier = list(span)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return span
