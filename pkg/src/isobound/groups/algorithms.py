"""Conjugacy classes, normal subgroups, quotients, homomorphism and isomorphism search."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .core import FiniteGroup, GroupTooLarge

MAX_ORDER = 256

# Possible deviation-group orders: divisors d <= 255 of |GL_2(Z/2^n)|^2.
DELTA_ORDERS = (1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 32, 36, 48, 64, 72, 96, 128, 144, 192)
DELTA_ORDER_BOUND = 255

# Orders of subgroups of M_2^0(F_2) x| GL_2(F_2), the codomain of phi.
PHI_ORDERS = (1, 2, 3, 4, 6, 8, 12, 16, 24, 48)

# Database labels of the problematic groups per order.
PROBLEMATIC_LABELS = {
    192: (1023, 1025, 1541),
    144: (),
    128: (2326, 2327, 2328),
    96: (204,),
    72: (),
    64: (266, 267),
    48: (3, 50),
    36: (11,),
    32: (49, 50, 51),
}
PROBLEMATIC_CLASS_COUNTS = {192: 1543, 144: 197, 128: 2328, 96: 231, 72: 50, 64: 267, 48: 52, 36: 14, 32: 51}


class NotNormal(ValueError):
    pass


def _guard(G: FiniteGroup, limit: int = MAX_ORDER) -> None:
    if G.order > limit:
        raise GroupTooLarge(f"group of order {G.order} exceeds the limit {limit}")


# --------------------------------------------------------------- conjugacy


@dataclass(frozen=True)
class ConjClassPartition:
    classes: tuple[frozenset[int], ...]

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return sorted(len(c) for c in self.classes)

    def class_of(self, i: int) -> frozenset[int]:
        for c in self.classes:
            if i in c:
                return c
        raise KeyError(i)


def conjugates(G: FiniteGroup, x: int) -> frozenset[int]:
    T, inv = G.table, G.inv
    return frozenset(T[T[:, x], inv].tolist())


def conjugacy_classes(G: FiniteGroup) -> ConjClassPartition:
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    # identity first, then by smallest member
    for x in [G.identity] + [i for i in range(G.order) if i != G.identity]:
        if seen[x]:
            continue
        cls = conjugates(G, x)
        seen[list(cls)] = True
        classes.append(cls)
    return ConjClassPartition(tuple(classes))


def center(G: FiniteGroup) -> frozenset[int]:
    T = G.table
    return frozenset(int(x) for x in np.nonzero((T == T.T).all(axis=0))[0])


def derived_subgroup(G: FiniteGroup) -> frozenset[int]:
    T, inv = G.table, G.inv
    n = G.order
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    comms = T[T[a, b], T[inv[a], inv[b]]]
    return G.generate(np.unique(comms).tolist())


# --------------------------------------------------------- normal subgroups


def _product_set(G: FiniteGroup, N: frozenset[int], M: frozenset[int]) -> frozenset[int]:
    return frozenset(np.unique(G.table[np.ix_(sorted(N), sorted(M))]).tolist())


def normal_subgroups(G: FiniteGroup, limit: int = MAX_ORDER) -> list[frozenset[int]]:
    """All normal subgroups, sorted by (size, members).

    Normal closures of single classes are joined pairwise until nothing new
    appears; every normal subgroup is a join of such closures.
    """
    _guard(G, limit)
    trivial = frozenset({G.identity})
    found = {trivial}
    atoms = []
    for cls in conjugacy_classes(G):
        N = G.generate(cls)
        if N not in found:
            found.add(N)
            atoms.append(N)
    frontier = list(found)
    while frontier:
        new = []
        for N in frontier:
            for A in atoms:
                J = _product_set(G, N, A)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_normal(G: FiniteGroup, N: frozenset[int]) -> bool:
    if not G.is_subgroup(N):
        return False
    T, inv = G.table, G.inv
    members = np.array(sorted(N))
    gens = G.generators or range(G.order)
    return all(set(T[T[g, members], inv[g]].tolist()) <= N for g in gens)


# ---------------------------------------------------------------- quotients


@dataclass(frozen=True)
class QuotientMap:
    source: FiniteGroup
    kernel: frozenset[int]
    quotient: FiniteGroup
    projection: np.ndarray  # source index -> quotient index

    def __post_init__(self):
        assert self.source.order == len(self.kernel) * self.quotient.order

    def is_homomorphism(self) -> bool:
        T, Q, p = self.source.table, self.quotient.table, self.projection
        return bool((p[T] == Q[p[:, None], p[None, :]]).all())


def coset_labels(G: FiniteGroup, N: frozenset[int]) -> np.ndarray:
    labels = np.full(G.order, -1, dtype=np.int32)
    members = np.array(sorted(N))
    nxt = 0
    order = [G.identity] + [i for i in range(G.order) if i != G.identity]
    for x in order:
        if labels[x] < 0:
            labels[G.table[x, members]] = nxt
            nxt += 1
    return labels


def quotient(G: FiniteGroup, N) -> QuotientMap:
    N = frozenset(int(x) for x in N)
    if not is_normal(G, N):
        raise NotNormal("subset is not a normal subgroup")
    labels = coset_labels(G, N)
    k = int(labels.max()) + 1
    reps = np.zeros(k, dtype=np.int64)
    for x in range(G.order - 1, -1, -1):
        reps[labels[x]] = x
    table = labels[G.table[np.ix_(reps, reps)]]
    gens = [int(labels[g]) for g in G.generators]
    Q = FiniteGroup(range(k), table=table, generators=gens, name=f"{G.name}/N" if G.name else "")
    return QuotientMap(G, N, Q, labels)


def quotient_element_orders(G: FiniteGroup, N: frozenset[int]) -> np.ndarray:
    """Order of gN in G/N for every g (smallest m with g^m in N)."""
    in_n = np.zeros(G.order, dtype=bool)
    in_n[list(N)] = True
    base = np.arange(G.order)
    power = base.copy()
    orders = np.zeros(G.order, dtype=np.int64)
    m = 1
    while (orders == 0).any():
        hit = in_n[power] & (orders == 0)
        orders[hit] = m
        power = G.table[power, base]
        m += 1
    return orders


@dataclass(frozen=True)
class QuotientWitness:
    normal_subgroup: frozenset[int]
    element: int
    order: int

    @property
    def kernel_order(self) -> int:
        return len(self.normal_subgroup)


def has_quotient_with_element_order_gt(
    G: FiniteGroup, k: int = 3, *, proper: bool = False, limit: int = MAX_ORDER
) -> Optional[QuotientWitness]:
    """Witness for a quotient of G containing an element of order > k.

    The largest such quotient is reported (smallest kernel), with its element
    of largest order. ``proper=True`` ignores the quotient by the trivial
    subgroup, i.e. asks for a strictly smaller quotient.
    """
    _guard(G, limit)
    for N in normal_subgroups(G, limit):
        if len(N) == G.order or (proper and len(N) == 1):
            continue
        orders = quotient_element_orders(G, N)
        best = int(orders.max())
        if best > k:
            return QuotientWitness(N, int(np.argmax(orders)), best)
    return None


def is_problematic(G: FiniteGroup, k: int = 3, limit: int = MAX_ORDER) -> bool:
    """No strictly smaller quotient has an element of order > k."""
    return has_quotient_with_element_order_gt(G, k, proper=True, limit=limit) is None


def smallest_quotient_with_element_order_gt(
    G: FiniteGroup, k: int = 3, limit: int = MAX_ORDER
) -> Optional[int]:
    """Order of the smallest quotient of G (G included) with an element of order > k."""
    _guard(G, limit)
    best = None
    for N in normal_subgroups(G, limit):
        if len(N) == G.order:
            continue
        if quotient_element_orders(G, N).max() > k:
            q = G.order // len(N)
            best = q if best is None else min(best, q)
    return best


# ------------------------------------------------------ homomorphism search


def small_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set, preferring elements of large order."""
    if G.order == 1:
        return ()
    orders = G.element_orders
    candidates = sorted(range(G.order), key=lambda i: (-int(orders[i]), i))
    gens: list[int] = []
    sub = frozenset({G.identity})
    for x in candidates:
        if x not in sub:
            gens.append(x)
            sub = G.generate(gens)
            if len(sub) == G.order:
                break
    # drop redundant generators
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and len(G.generate(rest)) == G.order:
            gens = rest
    return tuple(gens)


def generators_of(G: FiniteGroup) -> tuple[int, ...]:
    if G.generators and len(G.generate(G.generators)) == G.order:
        gens = G.generators
        minimal = small_generating_set(G)
        return minimal if len(minimal) < len(gens) else gens
    return small_generating_set(G)


def extend_hom(
    G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> Optional[np.ndarray]:
    """Extend ``gens[i] -> images[i]`` along the Cayley graph of <gens>.

    Returns the map on <gens> (-1 elsewhere) if it is consistent, i.e. a
    homomorphism on the generated subgroup; None otherwise.
    """
    TG, TH = G.table, H.table
    f = np.full(G.order, -1, dtype=np.int64)
    f[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for s, t in zip(gens, images):
            y = TG[x, s]
            val = TH[fx, t]
            if f[y] < 0:
                f[y] = val
                queue.append(y)
            elif f[y] != val:
                return None
    return f


def _candidates(G, H, gens, match):
    og, oh = G.element_orders, H.element_orders
    out = []
    for g in gens:
        if match is None:
            out.append([h for h in range(H.order) if og[g] % oh[h] == 0])
        else:
            out.append([h for h in range(H.order) if match(g, h)])
    return out


def _search(G, H, gens, cands, accept):
    images: list[int] = []

    def rec(i):
        if i == len(gens):
            f = extend_hom(G, H, gens, images)
            return f if f is not None and accept(f) else None
        for h in cands[i]:
            images.append(h)
            partial = extend_hom(G, H, gens[: i + 1], images)
            if partial is not None:
                found = rec(i + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    return rec(0)


def find_hom(
    G: FiniteGroup, H: FiniteGroup, surjective: bool = False, max_generators: int = 4
) -> Optional[np.ndarray]:
    """A (surjective, if asked) homomorphism G -> H as an index array, or None."""
    if H.order > 64 and surjective is False:
        pass
    gens = list(generators_of(G))
    if len(gens) > max_generators:
        raise ValueError(f"G needs {len(gens)} generators; the search allows {max_generators}")
    if surjective and G.order % H.order:
        return None
    if not gens:
        f = np.array([H.identity])
        return f if (not surjective or H.order == 1) else None
    cands = _candidates(G, H, gens, None)
    if surjective:
        accept = lambda f: len(np.unique(f)) == H.order  # noqa: E731
    else:
        accept = lambda f: True  # noqa: E731
    return _search(G, H, gens, cands, accept)


def hom_exists(G: FiniteGroup, H: FiniteGroup, surjective: bool = False, max_generators: int = 4) -> bool:
    if H.order > 64:
        raise GroupTooLarge("hom_exists is limited to |H| <= 64")
    return find_hom(G, H, surjective, max_generators) is not None


# ---------------------------------------------------------- isomorphism


def invariants(G: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants."""
    orders = Counter(G.element_orders.tolist())
    cc = conjugacy_classes(G)
    # pair each class size with the element order of its members
    class_profile = Counter((len(c), int(G.element_orders[next(iter(c))])) for c in cc)
    return (
        G.order,
        tuple(sorted(orders.items())),
        tuple(sorted(class_profile.items())),
        len(center(G)),
        G.order // len(derived_subgroup(G)),
    )


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[np.ndarray]:
    if G.order != H.order:
        return None
    _guard(G)
    if invariants(G) != invariants(H):
        return None
    gens = list(small_generating_set(G))
    if not gens:
        return np.array([H.identity])
    ccg, cch = conjugacy_classes(G), conjugacy_classes(H)
    size_g = {x: len(c) for c in ccg for x in c}
    size_h = {x: len(c) for c in cch for x in c}
    og, oh = G.element_orders, H.element_orders
    match = lambda g, h: og[g] == oh[h] and size_g[g] == size_h[h]  # noqa: E731
    cands = _candidates(G, H, gens, match)
    return _search(G, H, gens, cands, lambda f: len(np.unique(f)) == H.order)


def iso_test(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


# ----------------------------------------------------------- order lists


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def derive_delta_orders(bound: int = DELTA_ORDER_BOUND, max_level: int = 5) -> tuple[int, ...]:
    """Divisors d <= bound of (6 * 16^(n-1))^2 over 1 <= n <= max_level."""
    found: set[int] = set()
    for n in range(1, max_level + 1):
        found.update(d for d in divisors((6 * 16 ** (n - 1)) ** 2) if d <= bound)
    return tuple(sorted(found))


def order_list_check(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be >= 1")
    return n in DELTA_ORDERS


def all_subgroups(G: FiniteGroup, limit: int = 128) -> list[frozenset[int]]:
    """Every subgroup, by joining cyclic subgroups (small groups only)."""
    _guard(G, limit)
    cyclic = {G.generate([x]) for x in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                J = G.generate(sorted(S | C))
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))
