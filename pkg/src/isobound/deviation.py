"""Deviation group of a pair of 2-adic representations, computed mod 2^k.

Given rho1, rho2 : G -> GL_2(Z/2^k) the module M is the Z/2^k-span of the
pairs (rho1(g), rho2(g)) inside M_2 x M_2 = (Z/2^k)^8, and the deviation
group is the image of G in (M/2M)^x. Module arithmetic uses Howell bases so
that reduction mod 2M gives canonical coset representatives.

alpha is the least 2-adic valuation of a trace difference; beta is the
largest level at which rho1 and rho2 are conjugate. When beta is finite the
pair, normalized so that rho1 = rho2 mod 2^beta, defines
phi(g) = (theta_g rho1(g)^-1 mod 2, rho1(g) mod 2) in M_2(F_2) x| GL_2(F_2),
with theta_g = (rho2(g) - rho1(g)) / 2^beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import howell
from .groups.algorithms import (
    is_problematic,
    normal_subgroups,
    quotient,
    smallest_quotient_with_element_order_gt,
)
from .groups.core import FiniteGroup, close_group
from .groups.elements import (
    GL2_F2,
    IDENTITY,
    M2_F2,
    Mat,
    Mat2,
    SDPair,
    mat_det,
    mat_inv,
    mat_mul,
    mat_reduce,
    mat_scale,
    mat_sub,
    mat_trace,
)

__all__ = [
    "RepPair",
    "ModuleBasis",
    "DeviationGroup",
    "AlphaBeta",
    "PhiImage",
    "DistinguishingClass",
    "TwistReport",
    "TRACES_EQUAL",
    "NothingToDeviate",
    "InternalError",
    "algebra_closure",
    "deviation_group",
    "compute_alpha",
    "compute_beta",
    "phi_map",
    "distinguishing_class",
    "det_expansion_check",
    "twist_deviation_analysis",
    "residual_absolutely_irreducible",
    "parse_rep_pair",
    "read_rep_pair",
    "format_rep_pair",
]

MAX_K = 6


class _TracesEqual:
    """Marker: all trace differences vanish mod 2^k (alpha >= k)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TracesEqual"

    def __reduce__(self):
        return (_TracesEqual, ())


TRACES_EQUAL = _TracesEqual()


class NothingToDeviate(ValueError):
    """beta is not a finite positive level below the working precision."""


class InternalError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class _MatPair:
    m: int
    a: Mat
    b: Mat

    def __mul__(self, other: "_MatPair") -> "_MatPair":
        return _MatPair(self.m, mat_mul(self.a, other.a, self.m), mat_mul(self.b, other.b, self.m))

    def inverse(self) -> "_MatPair":
        return _MatPair(self.m, mat_inv(self.a, self.m), mat_inv(self.b, self.m))


def _batch_mul(X: np.ndarray, Y: np.ndarray, m: int) -> np.ndarray:
    """Row-wise 2x2 products of (N, 4) arrays, mod m."""
    a, b, c, d = X.T
    e, f, g, h = Y.T
    return np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=1) % m


def _check_mat(x: Mat, m: int) -> Mat:
    x = mat_reduce(x, m)
    if mat_det(x) % 2 == 0:
        raise ValueError(f"matrix {x} is not invertible mod 2")
    return x


@dataclass(frozen=True)
class RepPair:
    """Two representations of a finite group into GL_2(Z/2^k)."""

    k: int
    group: FiniteGroup
    images: tuple[tuple[Mat, Mat], ...]  # indexed like group elements

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be in 1..{MAX_K}")
        if len(self.images) != self.group.order:
            raise ValueError("need one image pair per group element")
        m = self.modulus
        imgs = tuple((_check_mat(a, m), _check_mat(b, m)) for a, b in self.images)
        object.__setattr__(self, "images", imgs)
        self._check_homomorphism()

    @property
    def modulus(self) -> int:
        return 1 << self.k

    def _check_homomorphism(self) -> None:
        T = self.group.table
        n = self.group.order
        rows = np.repeat(np.arange(n), n)
        cols = np.tile(np.arange(n), n)
        for side in (0, 1):
            X = np.array([p[side] for p in self.images], dtype=np.int64)
            bad = (_batch_mul(X[rows], X[cols], self.modulus) != X[T[rows, cols]]).any(axis=1)
            if bad.any():
                i = int(np.argmax(bad))
                raise ValueError(f"rho{side + 1} is not a homomorphism at ({rows[i]}, {cols[i]})")

    @classmethod
    def from_generators(cls, k: int, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]) -> "RepPair":
        """Take G to be the group generated by the given matrix pairs."""
        m = 1 << k
        gens = [_MatPair(m, _check_mat(tuple(a), m), _check_mat(tuple(b), m)) for a, b in pairs]
        G = close_group(gens, identity=_MatPair(m, IDENTITY, IDENTITY))
        images = tuple((e.a, e.b) for e in G.elements)
        return cls(k, G.as_table_group(name=f"image of order {G.order}"), images)

    def rho1(self, g: int) -> Mat:
        return self.images[g][0]

    def rho2(self, g: int) -> Mat:
        return self.images[g][1]

    def generators(self) -> tuple[int, ...]:
        gens = self.group.generators
        if gens and len(self.group.generate(gens)) == self.group.order:
            return gens
        return tuple(range(self.group.order))

    def conjugated(self, P: Mat) -> "RepPair":
        """Replace rho2 by P rho2 P^-1."""
        m = self.modulus
        Pinv = mat_inv(P, m)
        images = tuple((a, mat_mul(mat_mul(P, b, m), Pinv, m)) for a, b in self.images)
        return RepPair(self.k, self.group, images)

    def swapped(self) -> "RepPair":
        return RepPair(self.k, self.group, tuple((b, a) for a, b in self.images))

    def residual_image(self, side: int = 0) -> frozenset[Mat]:
        return frozenset(mat_reduce(p[side], 2) for p in self.images)


def residual_absolutely_irreducible(rp: RepPair, side: int = 0) -> bool:
    """A 2-dimensional F_2-representation is absolutely irreducible iff its image is all of GL_2(F_2)."""
    return len(rp.residual_image(side)) == len(GL2_F2)


# ------------------------------------------------------------------ module M


def _vec(pair: tuple[Mat, Mat]) -> tuple[int, ...]:
    return tuple(pair[0]) + tuple(pair[1])


def _pair_product(u: Sequence[int], v: Sequence[int], m: int) -> tuple[int, ...]:
    return mat_mul(tuple(u[:4]), tuple(v[:4]), m) + mat_mul(tuple(u[4:]), tuple(v[4:]), m)


@dataclass(frozen=True)
class ModuleBasis:
    basis: howell.HowellBasis  # M
    doubled: howell.HowellBasis  # 2M

    @property
    def k(self) -> int:
        return self.basis.k

    @property
    def rank(self) -> int:
        """dim over F_2 of M/2M (minimal number of generators of M)."""
        return self.basis.log2_size() - self.doubled.log2_size()

    def rank_profile(self) -> dict[int, int]:
        """Number of Howell rows with pivot 2^e, keyed by e."""
        out: dict[int, int] = {}
        for _, e in self.basis.pivots():
            out[e] = out.get(e, 0) + 1
        return out

    def contains(self, v) -> bool:
        return self.basis.contains(v)

    def mod_2m(self, v) -> tuple[int, ...]:
        """Canonical representative of v + 2M."""
        return self.doubled.reduce(v)

    def is_closed(self) -> bool:
        m = 1 << self.k
        rows = self.basis.rows
        return all(self.basis.contains(_pair_product(u, v, m)) for u in rows for v in rows)


def algebra_closure(rp: RepPair) -> ModuleBasis:
    """Smallest submodule of (Z/2^k)^8 containing the image pairs and closed under products."""
    m, k = rp.modulus, rp.k
    rows = [_vec(p) for p in rp.images]
    H = howell.howell_form(rows, k, 8)
    while True:
        products = [_pair_product(u, v, m) for u in H.rows for v in H.rows]
        H2 = howell.howell_form(list(H.rows) + products, k, 8)
        if H2 == H:
            break
        H = H2
    return ModuleBasis(H, H.scaled(2))


# --------------------------------------------------------- deviation group


@dataclass(frozen=True)
class DeviationGroup:
    module: ModuleBasis
    representatives: tuple[tuple[int, ...], ...]  # canonical mod-2M vectors, one per element
    coordinates: tuple[tuple[int, ...], ...]  # F_2 coordinates in a basis of M/2M
    group: FiniteGroup
    projection: np.ndarray  # G index -> delta index

    @property
    def order(self) -> int:
        return self.group.order


def _quotient_basis(mod: ModuleBasis) -> list[tuple[int, ...]]:
    """Howell rows of M whose images form an F_2-basis of M/2M."""
    m = 1 << mod.k
    chosen: list[tuple[int, ...]] = []
    span = {mod.mod_2m((0,) * 8)}
    for row in mod.basis.rows:
        r = mod.mod_2m(row)
        if r in span:
            continue
        chosen.append(row)
        span |= {mod.mod_2m([(a + b) % m for a, b in zip(s, row)]) for s in span}
    if len(chosen) != mod.rank:
        raise InternalError("M/2M basis has the wrong size")
    return chosen


def _coordinate_table(mod: ModuleBasis) -> dict[tuple[int, ...], tuple[int, ...]]:
    m = 1 << mod.k
    basis = _quotient_basis(mod)
    table = {}
    for coeffs in product((0, 1), repeat=len(basis)):
        v = [0] * 8
        for c, row in zip(coeffs, basis):
            if c:
                v = [(a + b) % m for a, b in zip(v, row)]
        table[mod.mod_2m(v)] = coeffs
    return table


def deviation_group(rp: RepPair, module: Optional[ModuleBasis] = None) -> DeviationGroup:
    mod = module or algebra_closure(rp)
    reps = [mod.mod_2m(_vec(p)) for p in rp.images]
    labels: dict[tuple[int, ...], int] = {}
    order = [rp.group.identity] + [g for g in range(rp.group.order) if g != rp.group.identity]
    for g in order:
        labels.setdefault(reps[g], len(labels))
    proj = np.array([labels[r] for r in reps], dtype=np.int64)
    n = len(labels)
    table = -np.ones((n, n), dtype=np.int64)
    T = rp.group.table
    size = rp.group.order
    a = np.repeat(np.arange(size), size)
    b = np.tile(np.arange(size), size)
    x, y, z = proj[a], proj[b], proj[T[a, b]]
    table[x, y] = z
    if (table[x, y] != z).any() or (table < 0).any():
        raise InternalError("product on M/2M is not well defined on the image")
    gens = sorted({int(proj[g]) for g in rp.generators()})
    delta = FiniteGroup(range(n), table=table, generators=gens, name="delta(G)")
    if n > 1 << mod.rank:
        raise InternalError("|delta(G)| exceeds 2^rank")
    coords = _coordinate_table(mod)
    vectors = [None] * n
    for r, i in labels.items():
        vectors[i] = r
    return DeviationGroup(
        mod,
        tuple(vectors),
        tuple(coords[v] for v in vectors),
        delta,
        proj,
    )


# ------------------------------------------------------------- alpha, beta


def compute_alpha(rp: RepPair):
    """Least v_2 of tr rho1(g) - tr rho2(g) mod 2^k, or TRACES_EQUAL."""
    m, k = rp.modulus, rp.k
    best = k
    for a, b in rp.images:
        best = min(best, howell.v2(mat_trace(a) - mat_trace(b), k))
    return TRACES_EQUAL if best == k else best


@dataclass(frozen=True)
class AlphaBeta:
    alpha: Optional[int]  # None: traces agree mod 2^k
    beta: Optional[int]  # None: conjugate mod 2^k
    conjugator: Optional[Mat]  # P with rho1 = P rho2 P^-1 mod 2^level
    k: int

    @property
    def level(self) -> int:
        """Level at which ``conjugator`` is valid."""
        return self.k if self.beta is None else self.beta

    def __str__(self) -> str:
        fmt = lambda x: f">={self.k}" if x is None else str(x)  # noqa: E731
        return f"alpha={fmt(self.alpha)} beta={fmt(self.beta)}"


def _intertwiner_rows(rp: RepPair, gens: Sequence[int], m: int) -> list[list[int]]:
    """Rows of the linear map P -> (rho1(g) P - P rho2(g))_g on vec(P)."""
    rows = []
    for i in range(4):
        E = tuple(int(j == i) for j in range(4))
        row: list[int] = []
        for g in gens:
            a, b = rp.images[g]
            row.extend(mat_sub(mat_mul(a, E, m), mat_mul(E, b, m), m))
        rows.append(row)
    return rows


def intertwiners(rp: RepPair, level: int) -> howell.HowellBasis:
    """{P : rho1(g) P = P rho2(g) mod 2^level for all g} as a Howell basis in (Z/2^level)^4."""
    m = 1 << level
    gens = rp.generators()
    rows = _intertwiner_rows(rp, gens, m)
    return howell.kernel(rows, level, 4 * len(gens))


def _unit_in(basis: howell.HowellBasis) -> Optional[Mat]:
    rows = basis.rows
    m = basis.modulus
    for coeffs in product((0, 1), repeat=len(rows)):
        v = [0, 0, 0, 0]
        for c, r in zip(coeffs, rows):
            if c:
                v = [(x + y) % m for x, y in zip(v, r)]
        if mat_det(v) % 2:
            return tuple(v)  # type: ignore[return-value]
    return None


def compute_beta(rp: RepPair) -> AlphaBeta:
    alpha = compute_alpha(rp)
    beta: Optional[int] = 0
    witness: Optional[Mat] = None
    for level in range(1, rp.k + 1):
        P = _unit_in(intertwiners(rp, level))
        if P is None:
            break
        beta, witness = level, P
    else:
        beta = None
    a = None if alpha is TRACES_EQUAL else alpha
    if beta is None and a is not None:
        raise InternalError("conjugate mod 2^k but traces differ")
    if beta is not None and a is not None and beta > a:
        raise InternalError(f"beta={beta} exceeds alpha={a}")
    return AlphaBeta(a, beta, witness, rp.k)


# --------------------------------------------------------------------- phi


@dataclass(frozen=True)
class PhiImage:
    group: FiniteGroup  # subgroup of M_2(F_2) x| GL_2(F_2)
    values: tuple[SDPair, ...]  # phi(g) per element of G
    normalized: RepPair  # rho2 conjugated so that rho1 = rho2 mod 2^beta
    beta: int

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def trace_zero(self) -> bool:
        return all(v.trace_zero for v in self.values)


@lru_cache(maxsize=1)
def _sd_code_table() -> np.ndarray:
    """Product table of M_2(F_2) x| GL_2(F_2) on codes A_bits + 16 * B_index."""
    elems = [SDPair(a, b) for b in GL2_F2 for a in M2_F2]
    code = lambda e: e.bits()[0] + 16 * e.bits()[1]  # noqa: E731
    out = np.zeros((96, 96), dtype=np.int64)
    for x in elems:
        for y in elems:
            out[code(x), code(y)] = code(x * y)
    return out


def _lift(P: Mat, m: int) -> Mat:
    return mat_reduce(P, m)


def phi_map(rp: RepPair, ab: Optional[AlphaBeta] = None) -> PhiImage:
    ab = ab or compute_beta(rp)
    if ab.beta is None:
        raise NothingToDeviate(f"representations are conjugate mod 2^{rp.k}")
    if ab.beta == 0:
        raise NothingToDeviate("residual representations are not isomorphic")
    beta, m = ab.beta, rp.modulus
    # conjugator P satisfies rho1 = P rho2 P^-1 mod 2^beta; any lift is a unit mod 2^k
    norm = rp.conjugated(_lift(ab.conjugator, m))
    values = []
    for a, b in norm.images:
        diff = mat_sub(b, a, m)
        if any(x % (1 << beta) for x in diff):
            raise InternalError("normalized pair differs mod 2^beta")
        theta = tuple((x >> beta) % 2 for x in diff)
        A = mat_mul(theta, mat_inv(mat_reduce(a, 2), 2), 2)
        values.append(SDPair(A, mat_reduce(a, 2)))
    codes = np.array([v.bits()[0] + 16 * v.bits()[1] for v in values], dtype=np.int64)
    table = _sd_code_table()
    T = rp.group.table
    n = rp.group.order
    i = np.repeat(np.arange(n), n)
    j = np.tile(np.arange(n), n)
    if (codes[T[i, j]] != table[codes[i], codes[j]]).any():
        raise InternalError("phi is not a homomorphism")
    equal_det = all((mat_det(a) - mat_det(b)) % m == 0 for a, b in rp.images)
    if equal_det and not all(v.trace_zero for v in values):
        raise InternalError("equal determinants but a first component has odd trace")
    image = close_group(sorted(set(values)), identity=SDPair.identity(), name="phi(G)")
    if equal_det and image.order > 48:
        raise InternalError("phi image exceeds the trace-zero group")
    return PhiImage(image, tuple(values), norm, beta)


# -------------------------------------------------------- distinguishing C


@dataclass(frozen=True)
class DistinguishingClass:
    alpha: int
    delta_class: frozenset[int]  # indices into delta(G)
    phi_class: Optional[frozenset[SDPair]]  # elements of phi(G) with tr(AB) = 1, when available
    where: tuple[str, ...]  # ("Delta",) or ("Delta", "Phi")


def _normalized_diff(a: Mat, b: Mat, alpha: int, k: int) -> int:
    m = 1 << k
    return (((mat_trace(b) - mat_trace(a)) % m) >> alpha) & 1


def distinguishing_class(
    rp: RepPair, delta: Optional[DeviationGroup] = None, phi: Optional[PhiImage] = None
) -> DistinguishingClass:
    alpha = compute_alpha(rp)
    if alpha is TRACES_EQUAL:
        raise ValueError("TracesEqual: no element distinguishes the traces mod 2^k")
    delta = delta or deviation_group(rp)
    marks: dict[int, int] = {}
    for g, (a, b) in enumerate(rp.images):
        d = int(delta.projection[g])
        val = _normalized_diff(a, b, alpha, rp.k)
        if marks.setdefault(d, val) != val:
            raise InternalError("normalized trace difference is not constant on delta fibres")
    C = frozenset(d for d, v in marks.items() if v)
    if not C:
        raise InternalError("distinguishing class is empty")
    D = delta.group
    for x in C:
        for y in range(D.order):
            conj = D.mul(D.mul(y, x), D.inverse(y))
            if conj not in C:
                raise InternalError("distinguishing class is not closed under conjugation")
    for g, (a, b) in enumerate(rp.images):
        if int(delta.projection[g]) in C and (mat_trace(a) - mat_trace(b)) % rp.modulus == 0:
            raise InternalError("an element of the class has equal traces")

    phi_class = None
    where: tuple[str, ...] = ("Delta",)
    if residual_absolutely_irreducible(rp):
        ab = compute_beta(rp)
        if ab.beta == alpha:
            phi = phi or phi_map(rp, ab)
            phi_class = frozenset(
                e for e in phi.group.elements if mat_trace(mat_mul(e.A, e.B, 2)) % 2 == 1
            )
            if not phi_class:
                raise InternalError("phi class is empty")
            for g, (a, b) in enumerate(rp.images):
                if phi.values[g] in phi_class and (mat_trace(a) - mat_trace(b)) % rp.modulus == 0:
                    raise InternalError("phi class pulls back to an element with equal traces")
            where = ("Delta", "Phi")
    return DistinguishingClass(alpha, C, phi_class, where)


def det_expansion_check(A: Sequence[int], k: int = 2) -> bool:
    """det(I + 2A) = 1 + 2 tr(A) mod 4."""
    if k < 2:
        raise ValueError("k must be >= 2")
    m = 1 << k
    A = mat_reduce(A, m)
    M = tuple((i + 2 * a) % m for i, a in zip(IDENTITY, A))
    return (mat_det(M) - 1 - 2 * mat_trace(A)) % 4 == 0


# ---------------------------------------------------------- twist analysis


@dataclass(frozen=True)
class TwistReport:
    delta_order: int
    delta_order_bound: int
    problematic_check: str  # "passed", "failed" or "NotApplicable"
    problematic_quotient_found: Optional[bool]
    problematic_quotient_orders: tuple[int, ...]
    residual_absolutely_irreducible: bool
    alpha_beta: AlphaBeta

    def as_dict(self) -> dict:
        return {
            "delta_order": self.delta_order,
            "delta_order_bound": self.delta_order_bound,
            "problematic_check": self.problematic_check,
            "problematic_quotient_found": self.problematic_quotient_found,
            "problematic_quotient_orders": list(self.problematic_quotient_orders),
            "residual_absolutely_irreducible": self.residual_absolutely_irreducible,
            "alpha": self.alpha_beta.alpha,
            "beta": self.alpha_beta.beta,
        }


PROBLEMATIC_CHECK_ORDERS = (96, 128, 192)


def quotient_reduction_bound(delta: FiniteGroup) -> int:
    """Smallest order of a quotient with an element of order > 3, or |delta| if there is none."""
    best = smallest_quotient_with_element_order_gt(delta, 3)
    return delta.order if best is None else best


def _problematic_quotients(delta: FiniteGroup, orders: Sequence[int]) -> list[int]:
    found = []
    for N in normal_subgroups(delta):
        q = delta.order // len(N)
        if q in orders and is_problematic(quotient(delta, N).quotient):
            found.append(q)
    return sorted(set(found))


def twist_deviation_analysis(rho: FiniteGroup, H: Sequence[int] | frozenset[int]) -> TwistReport:
    """Deviation of rho against its twist by the character with kernel H.

    ``rho`` is a group of Mat2 elements mod 2^(t+1); ``H`` is a set of element
    indices of index 1 or 2.
    """
    if not rho.elements or not isinstance(rho.elements[0], Mat2):
        raise ValueError("rho must be a group of 2x2 matrices")
    m = rho.elements[0].modulus
    k = m.bit_length() - 1
    if 1 << k != m or not 2 <= k <= MAX_K:
        raise ValueError("modulus must be 2^(t+1) with 2 <= t+1 <= 6")
    H = frozenset(int(h) for h in H)
    if len(H) not in (rho.order, rho.order // 2) or 2 * len(H) < rho.order or not rho.is_subgroup(H):
        raise ValueError("H must be a subgroup of index 1 or 2")
    images = []
    for i, x in enumerate(rho.elements):
        a = x.entries
        images.append((a, a if i in H else mat_scale(a, -1, m)))
    rp = RepPair(k, rho.as_table_group(), tuple(images))
    delta = deviation_group(rp)
    ab = compute_beta(rp)
    abs_irr = residual_absolutely_irreducible(rp)
    bound = quotient_reduction_bound(delta.group)
    if abs_irr:
        return TwistReport(delta.order, bound, "NotApplicable", None, (), True, ab)
    found = _problematic_quotients(delta.group, PROBLEMATIC_CHECK_ORDERS)
    return TwistReport(
        delta.order, bound, "failed" if found else "passed", bool(found), tuple(found), False, ab
    )


# --------------------------------------------------------------- file format


def parse_rep_pair(text: str, table: Optional[FiniteGroup] = None) -> RepPair:
    """``modulus 2^k`` and ``group <order>`` headers, then 8 integers per element.

    Without a multiplication table the group is regenerated by closing the
    listed pairs (which must then already form a group).
    """
    k = order = None
    rows: list[tuple[Mat, Mat]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "modulus":
            spec = fields[1]
            if not spec.startswith("2^"):
                raise ValueError(f"line {no}: modulus must be written 2^k")
            k = int(spec[2:])
        elif fields[0] == "group":
            order = int(fields[1])
        else:
            vals = [int(x) for x in fields]
            if len(vals) != 8:
                raise ValueError(f"line {no}: expected 8 integers")
            rows.append((tuple(vals[:4]), tuple(vals[4:])))  # type: ignore[arg-type]
    if k is None or order is None:
        raise ValueError("missing 'modulus' or 'group' header")
    if len(rows) != order:
        raise ValueError(f"expected {order} element lines, got {len(rows)}")
    if table is not None:
        if table.order != order:
            raise ValueError("table order does not match")
        return RepPair(k, table, tuple(rows))
    rp = RepPair.from_generators(k, rows)
    if rp.group.order != order:
        raise ValueError(f"listed pairs generate a group of order {rp.group.order}, not {order}")
    return rp


def read_rep_pair(path: Union[str, Path], table_path: Union[str, Path, None] = None) -> RepPair:
    table = None
    if table_path is not None:
        from .groups.io import read_group

        table = read_group(table_path)
    return parse_rep_pair(Path(path).read_text(), table)


def format_rep_pair(rp: RepPair) -> str:
    lines = [f"modulus 2^{rp.k}", f"group {rp.group.order}"]
    lines += [" ".join(map(str, a + b)) for a, b in rp.images]
    return "\n".join(lines) + "\n"
