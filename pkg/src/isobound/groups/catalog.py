"""Hand-built finite groups: every group of order <= 24 plus a few larger ones.

The small-order catalog is used to cross-check the quotient logic against
direct enumeration; the larger groups (GL_2 over Z/2^k, the semidirect
products over F_2, extraspecial groups) are the ones the isogeny argument
actually touches.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .algorithms import center, quotient
from .core import FiniteGroup, close_group
from .elements import GL2_F2, IDENTITY, M2_F2, ZERO, Mat2, Perm, SDPair, mat_trace

# Number of isomorphism classes of groups of each order 1..24.
SMALL_GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15)


# --------------------------------------------------------------- builders


def cyclic(n: int) -> FiniteGroup:
    return metacyclic(n, 1, 1, 0, name=f"C{n}")


def metacyclic(m: int, n: int, r: int, s: int, name: str = "") -> FiniteGroup:
    """<a, b | a^m, b^n = a^s, b a b^-1 = a^r>, elements a^i b^j.

    Needs r^n = 1 and s*r = s mod m (so a^s commutes with b).
    """
    if pow(r, n, m) != 1 % m or (s * r - s) % m:
        raise ValueError(f"inconsistent metacyclic data m={m} n={n} r={r} s={s}")
    elements = [(i, j) for j in range(n) for i in range(m)]

    def op(x, y):
        i, j = x
        k, l = y
        e = i + k * pow(r, j, m)
        jl = j + l
        if jl >= n:
            e += s
            jl -= n
        return (e % m, jl)

    gens = [elements.index((1 % m, 0))]
    if n > 1:
        gens.append(elements.index((0, 1)))
    return FiniteGroup(elements, op, generators=gens, name=name).as_table_group()


def dihedral(order: int) -> FiniteGroup:
    m = order // 2
    return metacyclic(m, 2, m - 1, 0, name=f"D{order}")


def dicyclic(order: int) -> FiniteGroup:
    m = order // 2
    return metacyclic(m, 2, m - 1, m // 2, name=f"Dic{order}")


def direct_product(*groups: FiniteGroup, name: str = "") -> FiniteGroup:
    if not groups:
        return cyclic(1)
    G = groups[0]
    for H in groups[1:]:
        TG, TH = G.table, H.table
        elements = list(product(range(G.order), range(H.order)))
        gens = [(g, H.identity) for g in G.generators] + [(G.identity, h) for h in H.generators]
        pos = {e: i for i, e in enumerate(elements)}
        nG, nH = G.order, H.order
        ig, ih = np.meshgrid(np.arange(nG), np.arange(nH), indexing="ij")
        ig, ih = ig.ravel(), ih.ravel()
        table = TG[ig[:, None], ig[None, :]] * nH + TH[ih[:, None], ih[None, :]]
        G = FiniteGroup(range(nG * nH), table=table, generators=[pos[g] for g in gens])
    G.name = name or " x ".join(g.name or "?" for g in groups)
    return G


def semidirect(N: FiniteGroup, H: FiniteGroup, action: Callable[[int], Sequence[int]], name: str = "") -> FiniteGroup:
    """N x| H with h acting on N by the index permutation ``action(h)``.

    (n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2). ``action`` must be a
    homomorphism into Aut(N); the result is checked.
    """
    acts = np.array([list(action(h)) for h in range(H.order)])
    TN, TH = N.table, H.table
    nN, nH = N.order, H.order
    idx = lambda a, b: a * nH + b  # noqa: E731
    table = np.empty((nN * nH, nN * nH), dtype=np.int64)
    for n1, h1 in product(range(nN), range(nH)):
        row = TN[n1, acts[h1]]  # n1 * h1(n2) for every n2
        for h2 in range(nH):
            table[idx(n1, h1), idx(np.arange(nN), h2)] = idx(row, TH[h1, h2])
    gens = [idx(g, H.identity) for g in N.generators] + [idx(N.identity, h) for h in H.generators]
    if N.identity != 0 or H.identity != 0:
        raise ValueError("factors must have identity index 0")
    return FiniteGroup.from_table(table, generators=gens, name=name)


def perm_group(n: int, *gens_cycles: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    gens = [Perm.from_cycles(n, *cycles) for cycles in gens_cycles]
    return close_group(gens, name=name)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic(1)
    return perm_group(n, [tuple(range(1, n + 1))], [(1, 2)], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [[(1, 2, k)] for k in range(3, n + 1)]
    return perm_group(n, *gens, name=f"A{n}")


def sl2_3() -> FiniteGroup:
    return close_group([Mat2.of((1, 1, 0, 1), 3), Mat2.of((1, 0, 1, 1), 3)], name="SL(2,3)")


def central_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """G x H modulo the diagonal of two central subgroups of order 2."""
    zg = [z for z in center(G) if G.element_orders[z] == 2]
    zh = [z for z in center(H) if H.element_orders[z] == 2]
    if len(zg) != 1 or len(zh) != 1:
        raise ValueError("central product needs a unique central involution in each factor")
    P = direct_product(G, H)
    diag = frozenset({0, zg[0] * H.order + zh[0]})
    Q = quotient(P, diag).quotient
    Q.name = name
    return Q


def _power_action(H: FiniteGroup, N: FiniteGroup, aut: list[int]) -> Callable[[int], list[int]]:
    """Action of a cyclic H (generator H.generators[0]) by powers of ``aut``."""
    g = H.generators[0]
    powers = {H.identity: list(range(N.order))}
    cur, h = list(range(N.order)), H.identity
    for _ in range(H.order):
        h = int(H.table[h, g])
        cur = [aut[x] for x in cur]
        powers[h] = cur
    return lambda x: powers[x]


def _c2_action(H: FiniteGroup, N: FiniteGroup, aut: list[int], kernel: frozenset[int]):
    ident = list(range(N.order))
    return lambda h: ident if h in kernel else aut


# --------------------------------------------------------------- catalog


def _inversion(N: FiniteGroup) -> list[int]:
    return N.inv.tolist()


def _order16() -> list[FiniteGroup]:
    c4xc2 = direct_product(cyclic(4), cyclic(2))
    c2 = cyclic(2)
    # C4 x C2 elements are (i, j) -> 2*i + j.
    aut_a = [2 * i + ((j + i) % 2) for i in range(4) for j in range(2)]  # a -> ab, b -> b
    aut_b = [2 * ((i + 2 * j) % 4) + j for i in range(4) for j in range(2)]  # a -> a, b -> a^2 b
    return [
        cyclic(16),
        direct_product(cyclic(4), cyclic(4), name="C4 x C4"),
        direct_product(cyclic(8), cyclic(2), name="C8 x C2"),
        direct_product(cyclic(4), cyclic(2), cyclic(2), name="C4 x C2 x C2"),
        direct_product(*[cyclic(2)] * 4, name="C2^4"),
        dihedral(16),
        dicyclic(16),
        metacyclic(8, 2, 3, 0, name="SD16"),
        metacyclic(8, 2, 5, 0, name="M16"),
        metacyclic(4, 4, 3, 0, name="C4 x| C4"),
        semidirect(c4xc2, c2, _power_action(c2, c4xc2, aut_a), name="C2^2 x| C4"),
        direct_product(dihedral(8), cyclic(2), name="D8 x C2"),
        direct_product(dicyclic(8), cyclic(2), name="Q8 x C2"),
        semidirect(c4xc2, c2, _power_action(c2, c4xc2, aut_b), name="C4 o D8"),
    ]


def _c3_by_d8() -> FiniteGroup:
    """C3 x| D8 where D8 acts through the quotient by <a^2, b>."""
    d8 = dihedral(8)
    c3 = cyclic(3)
    kernel = d8.generate([d8.table[d8.generators[0], d8.generators[0]], d8.generators[1]])
    return semidirect(c3, d8, _c2_action(d8, c3, _inversion(c3), kernel), name="C3 x| D8")


def _order24() -> list[FiniteGroup]:
    return [
        metacyclic(3, 8, 2, 0, name="C3 x| C8"),
        cyclic(24),
        sl2_3(),
        dicyclic(24),
        direct_product(cyclic(4), symmetric(3), name="C4 x S3"),
        dihedral(24),
        direct_product(cyclic(2), dicyclic(12), name="C2 x Dic12"),
        _c3_by_d8(),
        direct_product(cyclic(12), cyclic(2), name="C12 x C2"),
        direct_product(cyclic(3), dihedral(8), name="C3 x D8"),
        direct_product(cyclic(3), dicyclic(8), name="C3 x Q8"),
        symmetric(4),
        direct_product(cyclic(2), alternating(4), name="C2 x A4"),
        direct_product(cyclic(2), cyclic(2), symmetric(3), name="C2^2 x S3"),
        direct_product(cyclic(6), cyclic(2), cyclic(2), name="C6 x C2 x C2"),
    ]


def _builders() -> dict[int, list[Callable[[], FiniteGroup]]]:
    c3 = cyclic(3)
    c3c3 = direct_product(c3, c3)
    c2 = cyclic(2)
    return {
        1: [lambda: cyclic(1)],
        2: [lambda: cyclic(2)],
        3: [lambda: cyclic(3)],
        4: [lambda: cyclic(4), lambda: direct_product(c2, c2, name="C2 x C2")],
        5: [lambda: cyclic(5)],
        6: [lambda: cyclic(6), lambda: symmetric(3)],
        7: [lambda: cyclic(7)],
        8: [
            lambda: cyclic(8),
            lambda: direct_product(cyclic(4), c2, name="C4 x C2"),
            lambda: direct_product(c2, c2, c2, name="C2^3"),
            lambda: dihedral(8),
            lambda: metacyclic(4, 2, 3, 2, name="Q8"),
        ],
        9: [lambda: cyclic(9), lambda: direct_product(c3, c3, name="C3 x C3")],
        10: [lambda: cyclic(10), lambda: dihedral(10)],
        11: [lambda: cyclic(11)],
        12: [
            lambda: cyclic(12),
            lambda: direct_product(cyclic(6), c2, name="C6 x C2"),
            lambda: dihedral(12),
            lambda: alternating(4),
            lambda: dicyclic(12),
        ],
        13: [lambda: cyclic(13)],
        14: [lambda: cyclic(14), lambda: dihedral(14)],
        15: [lambda: cyclic(15)],
        17: [lambda: cyclic(17)],
        18: [
            lambda: cyclic(18),
            lambda: direct_product(cyclic(6), c3, name="C6 x C3"),
            lambda: dihedral(18),
            lambda: direct_product(c3, symmetric(3), name="C3 x S3"),
            lambda: semidirect(c3c3, c2, _power_action(c2, c3c3, _inversion(c3c3)), name="(C3 x C3) x| C2"),
        ],
        19: [lambda: cyclic(19)],
        20: [
            lambda: cyclic(20),
            lambda: direct_product(cyclic(10), c2, name="C10 x C2"),
            lambda: dihedral(20),
            lambda: dicyclic(20),
            lambda: metacyclic(5, 4, 2, 0, name="F20"),
        ],
        21: [lambda: cyclic(21), lambda: metacyclic(7, 3, 2, 0, name="C7 x| C3")],
        22: [lambda: cyclic(22), lambda: dihedral(22)],
        23: [lambda: cyclic(23)],
    }


@lru_cache(maxsize=None)
def small_groups(order: int) -> tuple[FiniteGroup, ...]:
    """One representative of each isomorphism class of the given order (<= 24)."""
    if not 1 <= order <= 24:
        raise ValueError("the catalog covers orders 1..24")
    if order == 16:
        groups = _order16()
    elif order == 24:
        groups = _order24()
    else:
        groups = [b() for b in _builders()[order]]
    for G in groups:
        if G.order != order:
            raise AssertionError(f"{G.name} has order {G.order}, expected {order}")
    return tuple(groups)


def all_small_groups(max_order: int = 24) -> list[FiniteGroup]:
    return [G for n in range(1, max_order + 1) for G in small_groups(n)]


# ----------------------------------------------------- larger named groups


def gl2_generators(k: int) -> list[Mat2]:
    """Generators of GL_2(Z/2^k)."""
    m = 2**k
    gens = [Mat2.of((1, 1, 0, 1), m), Mat2.of((0, 1, 1, 0), m)]
    if k >= 2:
        gens.append(Mat2.of((-1, 0, 0, 1), m))
    if k >= 3:
        gens.append(Mat2.of((5, 0, 0, 1), m))
    return gens


def gl2(k: int) -> FiniteGroup:
    return close_group(gl2_generators(k), name=f"GL2(Z/{2**k})")


def sd_generators(trace_zero: bool = True) -> list[SDPair]:
    """(A, I) for A in a basis of the (trace-zero) matrices, plus (0, B) for generators B of GL_2(F_2)."""
    basis = [(0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 1)]
    if not trace_zero:
        basis.append((1, 0, 0, 0))
    gens = [SDPair(a, IDENTITY) for a in basis]
    gens += [SDPair(ZERO, (1, 1, 0, 1)), SDPair(ZERO, (0, 1, 1, 0))]
    return gens


def sd_group(trace_zero: bool = True) -> FiniteGroup:
    name = "M2^0(F2) x| GL2(F2)" if trace_zero else "M2(F2) x| GL2(F2)"
    return close_group(sd_generators(trace_zero), name=name)


def sd_trace_zero_elements() -> list[SDPair]:
    return [SDPair(a, b) for a in M2_F2 for b in GL2_F2 if mat_trace(a) % 2 == 0]


def extraspecial_32(sign: str = "+") -> FiniteGroup:
    """2^{1+4}: D8 o D8 for '+', D8 o Q8 for '-'."""
    other = dihedral(8) if sign == "+" else metacyclic(4, 2, 3, 2, name="Q8")
    return central_product(dihedral(8), other, name=f"2^(1+4){sign}")


def c3_x_a4() -> FiniteGroup:
    return direct_product(cyclic(3), alternating(4), name="C3 x A4")
