"""The :class:`FiniteGroup` container and generator closure."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

DEFAULT_CLOSURE_LIMIT = 10**6


class GroupTooLarge(ValueError):
    pass


class FiniteGroup:
    """A finite group given by an element list and a product.

    Elements are addressed by their index in ``elements``. The product is
    either an element-level callable or a precomputed Cayley table; the table
    is built lazily for element-level groups.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        op: Optional[Callable[[Hashable, Hashable], Hashable]] = None,
        *,
        table: Optional[np.ndarray] = None,
        generators: Iterable[int] = (),
        name: str = "",
    ):
        if op is None and table is None:
            raise ValueError("need an operation or a table")
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        self._op = op
        if table is not None:
            table = np.asarray(table, dtype=np.int32)
            n = len(self.elements)
            if table.shape != (n, n):
                raise ValueError(f"table shape {table.shape} does not match {n} elements")
            self.__dict__["table"] = table
        self.generators = tuple(dict.fromkeys(int(g) for g in generators))
        self.name = name

    @classmethod
    def from_table(cls, table, generators: Iterable[int] = (), name: str = "") -> "FiniteGroup":
        table = np.asarray(table, dtype=np.int32)
        group = cls(range(len(table)), table=table, generators=generators, name=name)
        group.check_axioms(associativity="full" if len(table) <= 64 else "sample")
        return group

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    def mul(self, i: int, j: int) -> int:
        if "table" in self.__dict__:
            return int(self.table[i, j])
        return self.index[self._op(self.elements[i], self.elements[j])]

    @cached_property
    def table(self) -> np.ndarray:
        n = self.order
        if n > 4096:
            raise GroupTooLarge(f"refusing to tabulate a group of order {n}")
        els, idx, op = self.elements, self.index, self._op
        return np.array([[idx[op(x, y)] for y in els] for x in els], dtype=np.int32)

    @cached_property
    def identity(self) -> int:
        for i in range(self.order):
            if self.mul(i, i) == i:
                return i
        raise ValueError("no identity element")

    @cached_property
    def inv(self) -> np.ndarray:
        if "table" in self.__dict__ or self.order <= 512:
            rows, cols = np.nonzero(self.table == self.identity)
            out = np.empty(self.order, dtype=np.int32)
            out[rows] = cols
            return out
        return np.array([self._inverse_slow(i) for i in range(self.order)], dtype=np.int32)

    def _inverse_slow(self, i: int) -> int:
        x = self.elements[i]
        if hasattr(x, "inverse"):
            return self.index[x.inverse()]
        cur = i
        while self.mul(cur, i) != self.identity:
            cur = self.mul(cur, i)
        return cur

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n, e = self.order, self.identity
        orders = np.zeros(n, dtype=np.int64)
        if "table" in self.__dict__ or n <= 512:
            base = np.arange(n)
            power = base.copy()
            m = 1
            while (orders == 0).any():
                hit = (power == e) & (orders == 0)
                orders[hit] = m
                power = self.table[power, base]
                m += 1
            return orders
        for i in range(n):
            m, cur = 1, i
            while cur != e:
                cur = self.mul(cur, i)
                m += 1
            orders[i] = m
        return orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders[i])

    def index_of(self, element: Hashable) -> int:
        return self.index[element]

    def generate(self, indices: Iterable[int]) -> frozenset[int]:
        """Index set of the subgroup generated by ``indices``."""
        gens = list(dict.fromkeys(int(g) for g in indices))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if self.identity not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def check_axioms(self, associativity: str = "sample", samples: int = 2000, seed: int = 0) -> None:
        """Closure, identity, inverses and (sampled or full) associativity."""
        n = self.order
        T = self.table
        if T.min() < 0 or T.max() >= n:
            raise ValueError("product leaves the element set")
        e = self.identity
        if not ((T[e] == np.arange(n)).all() and (T[:, e] == np.arange(n)).all()):
            raise ValueError("identity law fails")
        if not ((T == e).sum(axis=1) == 1).all():
            raise ValueError("some element has no unique inverse")
        if associativity == "full":
            left = T[T]  # left[a, b, c] = (a*b)*c is T[T[a,b], c]
            right = T[:, T]  # right[a, b, c] = a*(b*c)
            if not (left == right).all():
                raise ValueError("product is not associative")
        elif associativity == "sample":
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if not (T[T[a, b], c] == T[a, T[b, c]]).all():
                raise ValueError("product is not associative")

    def as_table_group(self, name: Optional[str] = None) -> "FiniteGroup":
        """Abstract copy whose elements are 0..n-1 (same indices)."""
        return FiniteGroup(
            range(self.order), table=self.table, generators=self.generators, name=name or self.name
        )

    def permuted(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy where old index i becomes ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        table = perm[self.table[np.ix_(inv, inv)]]
        return FiniteGroup(
            range(self.order), table=table, generators=[int(perm[g]) for g in self.generators], name=self.name
        )

    def subgroup(self, subset: Iterable[int], name: str = "") -> "FiniteGroup":
        """The subgroup on ``subset`` as a table group (indices renumbered in sorted order)."""
        members = sorted(frozenset(subset))
        pos = {x: i for i, x in enumerate(members)}
        table = np.array([[pos[int(self.table[a, b])] for b in members] for a in members], dtype=np.int32)
        return FiniteGroup([self.elements[m] for m in members], table=table, name=name)


def close_group(
    generators: Sequence[Hashable],
    *,
    identity: Optional[Hashable] = None,
    limit: int = DEFAULT_CLOSURE_LIMIT,
    name: str = "",
) -> FiniteGroup:
    """Group generated by elements that support ``*`` and ordering.

    The element list is canonical: identity first, then the rest sorted.
    """
    gens = list(dict.fromkeys(generators))
    if not gens:
        if identity is None:
            return FiniteGroup([0], table=np.zeros((1, 1), dtype=np.int32), name=name or "trivial")
        return FiniteGroup([identity], lambda x, y: x * y, name=name)
    seen = set(gens)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise GroupTooLarge(f"closure exceeded {limit} elements")
                queue.append(y)
    found_identity = next((x for x in gens if x * x == x), None)
    if found_identity is None:
        found_identity = next(x for x in seen if x * x == x)
    rest = sorted(x for x in seen if x != found_identity)
    elements = [found_identity] + rest
    index = {x: i for i, x in enumerate(elements)}
    return FiniteGroup(elements, lambda x, y: x * y, generators=[index[g] for g in gens], name=name)
