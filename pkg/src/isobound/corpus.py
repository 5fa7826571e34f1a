"""Deterministic corpus of representation pairs with full mod-2 image.

Each pair is rho1 : G -> GL_2(Z/2^k), with G the image of rho1, against
rho2 = P (chi * rho1) P^-1 for a scalar character chi of G and a
conjugator P. Characters are built from the sign of the residual image,
quadratic characters of det and powers of det, so they take unit values
congruent to 1 mod 2 and leave the residual representation unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .deviation import TRACES_EQUAL, RepPair, compute_alpha
from .groups.core import GroupTooLarge, close_group
from .groups.elements import IDENTITY, Mat, Mat2, mat_det, mat_inv, mat_mul, mat_reduce, mat_scale

# order-3 and order-2 lifts generating GL_2(F_2) mod 2
_S3_LIFT = ((0, -1, 1, -1), (0, 1, 1, 0))
_KERNEL_DIRECTIONS = ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 0, 1), (1, 1, 0, 1))
_CONJUGATORS = ((1, 0, 0, 1), (1, 2, 0, 1), (1, 0, 2, 3), (3, 2, 4, 1))


def _residual_sign(a: Mat) -> int:
    """Sign of the permutation induced by a mod 2 on the three nonzero vectors of F_2^2."""
    r = mat_reduce(a, 2)
    order = 1
    cur = r
    while cur != IDENTITY:
        cur = mat_mul(cur, r, 2)
        order += 1
    return -1 if order == 2 else 1


def _eps_minus4(u: int) -> int:
    return 1 if u % 4 == 1 else -1


def _eps_8(u: int) -> int:
    return 1 if u % 8 in (1, 7) else -1


def _eps_minus8(u: int) -> int:
    return 1 if u % 8 in (1, 3) else -1


@dataclass(frozen=True)
class Character:
    name: str
    value: Callable[[Mat, int], int]  # (matrix, modulus) -> unit mod modulus


def characters(k: int) -> list[Character]:
    out = [
        Character("sign", lambda a, m: _residual_sign(a) % m),
        Character("eps-4(det)", lambda a, m: _eps_minus4(mat_det(a) % m) % m),
        Character("sign*eps-4(det)", lambda a, m: (_residual_sign(a) * _eps_minus4(mat_det(a) % m)) % m),
    ]
    if k >= 3:
        out += [
            Character("eps8(det)", lambda a, m: _eps_8(mat_det(a) % m) % m),
            Character("eps-8(det)", lambda a, m: _eps_minus8(mat_det(a) % m) % m),
            Character("sign*eps8(det)", lambda a, m: (_residual_sign(a) * _eps_8(mat_det(a) % m)) % m),
        ]
    for j in (1, 2):
        out.append(Character(f"det^{j}", lambda a, m, j=j: pow(mat_det(a) % m, j, m)))
    return out


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    rep_pair: RepPair


def _image_generators(k: int, kernel_set: tuple[int, ...]) -> list[Mat2]:
    m = 1 << k
    gens = [Mat2.of(g, m) for g in _S3_LIFT]
    for idx in kernel_set:
        X = _KERNEL_DIRECTIONS[idx % len(_KERNEL_DIRECTIONS)]
        level = k - 1 if idx < len(_KERNEL_DIRECTIONS) else k - 2
        gens.append(Mat2.of(tuple(i + (x << level) for i, x in zip(IDENTITY, X)), m))
    return gens


def generate(
    limit: int = 10_000, ks=(3, 4, 5), max_group_order: int = 192, distinguishable_only: bool = False
) -> Iterator[CorpusEntry]:
    """Yield pairs in a fixed order until ``limit`` have been produced.

    ``distinguishable_only`` drops pairs whose traces agree mod 2^k.
    """
    count = 0
    n_dirs = 2 * len(_KERNEL_DIRECTIONS)
    for k in ks:
        m = 1 << k
        for size in (0, 1, 2):
            for kernel_set in product(range(n_dirs), repeat=size):
                if list(kernel_set) != sorted(set(kernel_set)):
                    continue
                gens = _image_generators(k, kernel_set)
                try:
                    G = close_group(gens, limit=max_group_order)
                except GroupTooLarge:
                    continue
                for chi in characters(k):
                    for P in _CONJUGATORS:
                        if count >= limit:
                            return
                        Pm = mat_reduce(P, m)
                        Pinv = mat_inv(Pm, m)
                        images = []
                        for x in G.elements:
                            a = x.entries
                            b = mat_mul(mat_mul(Pm, mat_scale(a, chi.value(a, m), m), m), Pinv, m)
                            images.append((a, b))
                        try:
                            rp = RepPair(k, G.as_table_group(), tuple(images))
                        except ValueError:
                            continue  # the chosen "character" is not multiplicative on this image
                        if distinguishable_only and compute_alpha(rp) is TRACES_EQUAL:
                            continue
                        name = f"k={k} ker={kernel_set} chi={chi.name} P={P}"
                        count += 1
                        yield CorpusEntry(name, rp)
