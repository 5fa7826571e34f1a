"""Elliptic curves over Q: invariants, a_p, bad primes, mod-2 images, twists."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import sympy
from sympy import Poly, QQ, Symbol, factor_list, resultant

from .arith import factor, is_square, is_squarefree, radical, valuation

__all__ = [
    "WeierstrassCurve",
    "CurveInvariants",
    "Mod2Image",
    "Mod2Class",
    "Mod2Relation",
    "Mod2Comparison",
    "TraceRecord",
    "SingularCurve",
    "BadReduction",
    "CapExceeded",
    "NeedFactorization",
    "DEFAULT_AP_CAP",
    "CM_J_INVARIANTS",
    "FINITE_LIST_J",
    "invariants",
    "ap",
    "ap_naive",
    "ap_legendre",
    "local_minimal_model",
    "minimal_discriminant_valuation",
    "has_good_reduction",
    "bad_primes",
    "bad_primes_radical",
    "mod2_image_class",
    "mod2_isomorphic",
    "quadratic_twist",
    "twist_parameter",
    "distinguishing_prime",
    "cm_and_finite_j_check",
    "parse_curves",
    "read_curves",
]

DEFAULT_AP_CAP = 10**7
FACTOR_LIMIT = 1 << 64


class SingularCurve(ValueError):
    pass


class BadReduction(ValueError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"bad reduction at {p}")


class CapExceeded(ValueError):
    pass


class NeedFactorization(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: str = field(default="", compare=False)
    conductor: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise TypeError(f"{name} must be an integer")
            object.__setattr__(self, name, int(value))
        if self.conductor is not None and self.conductor < 1:
            raise ValueError("conductor must be positive")
        if self.discriminant == 0:
            raise SingularCurve(f"singular model {self.ainvs}")

    @classmethod
    def from_ainvs(cls, ainvs: Sequence[int], label: str = "", conductor: Optional[int] = None):
        if len(ainvs) == 2:
            ainvs = (0, 0, 0, ainvs[0], ainvs[1])
        if len(ainvs) != 5:
            raise ValueError("need 5 a-invariants (or 2 for a short model)")
        return cls(*ainvs, label=label, conductor=conductor)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def discriminant(self) -> int:
        return _raw_invariants(self.ainvs)[6]

    def __str__(self) -> str:
        return self.label or str(list(self.ainvs))

    def change_coordinates(self, u: int, r: int, s: int, t: int) -> Optional["WeierstrassCurve"]:
        """Model under x = u^2 x' + r, y = u^3 y' + s u^2 x' + t, or None if not integral."""
        a1, a2, a3, a4, a6 = self.ainvs
        num = (
            (a1 + 2 * s, u),
            (a2 - s * a1 + 3 * r - s * s, u**2),
            (a3 + r * a1 + 2 * t, u**3),
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, u**4),
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1, u**6),
        )
        if any(n % d for n, d in num):
            return None
        return WeierstrassCurve(*(n // d for n, d in num), label=self.label, conductor=self.conductor)


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j_num: int
    j_den: int

    @property
    def j(self) -> Fraction:
        return Fraction(self.j_num, self.j_den)


def _raw_invariants(a: Sequence[int]):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, c4, c6, disc


def invariants(E: WeierstrassCurve) -> CurveInvariants:
    b2, b4, b6, b8, c4, c6, disc = _raw_invariants(E.ainvs)
    if disc == 0:
        raise SingularCurve(str(E))
    assert 1728 * disc == c4**3 - c6**2
    assert 4 * b8 == b2 * b6 - b4 * b4
    j = Fraction(c4**3, disc)
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, j.numerator, j.denominator)


# ------------------------------------------------------------- point counts


def ap_naive(E: WeierstrassCurve, p: int) -> int:
    """p + 1 - #E(F_p) by a double loop over (x, y). Oracle for small p."""
    a1, a2, a3, a4, a6 = (c % p for c in E.ainvs)
    count = 1
    for x in range(p):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                count += 1
    return p + 1 - count


def ap_legendre(a: int, b: int, p: int) -> int:
    """-sum_x (x^3 + a x + b | p) for a short model and p > 3."""
    if p <= 3:
        raise ValueError("the Legendre-sum counter needs p > 3")
    return -sum(int(sympy.legendre_symbol(x, p)) if x % p else 0 for x in ((t**3 + a * t + b) % p for t in range(p)))


@lru_cache(maxsize=8)
def _square_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=bool)
    y = np.arange(p, dtype=np.int64)
    table[(y * y) % p] = True
    return table


def _count_odd(ainvs: Sequence[int], p: int) -> int:
    """#E(F_p) affine + infinity, p odd, via 1 + chi(D(x)) solutions per x."""
    a1, a2, a3, a4, a6 = (c % p for c in ainvs)
    x = np.arange(p, dtype=np.int64)
    x2 = (x * x) % p
    x3 = (x2 * x) % p
    cubic = (x3 + (a2 * x2) % p + (a4 * x) % p + a6) % p
    lin = (a1 * x + a3) % p
    D = ((lin * lin) % p + 4 * cubic) % p
    sq = _square_table(p)[D]
    zero = D == 0
    per_x = np.where(zero, 1, np.where(sq, 2, 0))
    return 1 + int(per_x.sum())


def local_minimal_model(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """A model minimal at p, reached by repeated u = p coordinate changes."""
    cur = E
    while True:
        inv = invariants(cur)
        if valuation(inv.disc, p) < 12:
            return cur
        if p >= 5:
            if valuation(inv.c4, p) < 4 or valuation(inv.c6, p) < 6:
                return cur
            nxt = _kraus_model(cur, inv.c4 // p**4, inv.c6 // p**6)
            if nxt is None:
                raise RuntimeError(f"could not rescale {cur} at {p}")
        else:
            nxt = _search_small_p(cur, p)
        if nxt is None:
            return cur
        cur = nxt


def _kraus_model(E: WeierstrassCurve, c4: int, c6: int) -> Optional[WeierstrassCurve]:
    """Integral model with the given c4, c6, if the standard reconstruction applies."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    if (b2 * b2 - c4) % 24:
        return None
    b4 = (b2 * b2 - c4) // 24
    if (-(b2**3) + 36 * b2 * b4 - c6) % 216:
        return None
    b6 = (-(b2**3) + 36 * b2 * b4 - c6) // 216
    a1, a3 = b2 % 2, b6 % 2
    a = (a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)
    F = WeierstrassCurve(*a, label=E.label, conductor=E.conductor)
    Fi = invariants(F)
    return F if (Fi.c4, Fi.c6) == (c4, c6) else None


def _search_small_p(E: WeierstrassCurve, p: int) -> Optional[WeierstrassCurve]:
    for s in range(p):
        for r in range(p * p):
            for t in range(p**3):
                F = E.change_coordinates(p, r, s, t)
                if F is not None:
                    return F
    return None


def minimal_discriminant_valuation(E: WeierstrassCurve, p: int) -> int:
    return valuation(invariants(local_minimal_model(E, p)).disc, p)


def has_good_reduction(E: WeierstrassCurve, p: int) -> bool:
    if E.discriminant % p:
        return True
    return minimal_discriminant_valuation(E, p) == 0


def ap(E: WeierstrassCurve, p: int, cap: int = DEFAULT_AP_CAP) -> int:
    """Trace of Frobenius at a prime of good reduction."""
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if p > cap:
        raise CapExceeded(f"p = {p} exceeds the point-counting cap {cap}")
    model = E
    if E.discriminant % p == 0:
        model = local_minimal_model(E, p)
        if model.discriminant % p == 0:
            raise BadReduction(p)
    if p == 2:
        value = ap_naive(model, 2)
    else:
        value = p + 1 - _count_odd(model.ainvs, p)
    assert value * value <= 4 * p, (E, p, value)
    return value


# --------------------------------------------------------------- bad primes


def _primes_of(n: int, hints: Iterable[int] = ()) -> list[int]:
    n = abs(n)
    primes = set()
    for q in hints:
        q = int(q)
        if q > 1 and n % q == 0:
            if not sympy.isprime(q):
                raise ValueError(f"factor hint {q} is not prime")
            primes.add(q)
            while n % q == 0:
                n //= q
    if n >= FACTOR_LIMIT and not sympy.isprime(n):
        raise NeedFactorization(f"cofactor with {len(str(n))} digits needs factor hints or a conductor")
    primes.update(factor(n) if n > 1 else {})
    return sorted(primes)


def bad_primes(E: WeierstrassCurve, hints: Iterable[int] = ()) -> list[int]:
    """Primes dividing the minimal discriminant."""
    return [p for p in _primes_of(E.discriminant, hints) if minimal_discriminant_valuation(E, p) > 0]


def bad_primes_radical(E: WeierstrassCurve, hints: Iterable[int] = ()) -> int:
    """rad of the conductor, i.e. the product of primes of bad reduction.

    A supplied conductor is used directly; when the discriminant can also be
    factored the two are cross-checked.
    """
    if E.conductor is not None:
        rad = radical(E.conductor)
        try:
            computed = math.prod(bad_primes(E, hints))
        except NeedFactorization:
            return rad
        if computed != rad:
            raise ValueError(f"conductor {E.conductor} disagrees with bad primes {computed} of {E}")
        return rad
    return math.prod(bad_primes(E, hints))


# -------------------------------------------------------------- mod-2 image


class Mod2Image(enum.Enum):
    TRIVIAL = "Trivial"
    ORDER_TWO = "OrderTwo"
    ORDER_THREE = "OrderThree"
    FULL = "Full"


@dataclass(frozen=True)
class Mod2Class:
    image: Mod2Image
    absolutely_irreducible: bool
    cubic_disc_is_square: bool

    def __str__(self) -> str:
        return self.image.value


_X = Symbol("x")
_Y = Symbol("y")


def two_division_cubic(E: WeierstrassCurve) -> Poly:
    """4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the x-coordinates of the 2-torsion."""
    inv = invariants(E)
    return Poly(4 * _X**3 + inv.b2 * _X**2 + 2 * inv.b4 * _X + inv.b6, _X, domain=QQ)


def _factor_degrees(poly: Poly) -> list[int]:
    _, factors = factor_list(poly)
    degrees = []
    for f, e in factors:
        degrees += [Poly(f, *poly.gens).degree()] * e
    return sorted(degrees)


def _rational_is_square(q: Fraction) -> bool:
    return q >= 0 and is_square(q.numerator) and is_square(q.denominator)


def mod2_image_class(E: WeierstrassCurve) -> Mod2Class:
    cubic = two_division_cubic(E)
    degrees = _factor_degrees(cubic)
    disc = Fraction(int(sympy.discriminant(cubic.as_expr(), _X)))
    # the cubic's discriminant is 16 * Delta
    assert disc == 16 * E.discriminant
    square = _rational_is_square(disc)
    if degrees == [1, 1, 1]:
        image = Mod2Image.TRIVIAL
    elif degrees == [1, 2]:
        image = Mod2Image.ORDER_TWO
    elif square:
        image = Mod2Image.ORDER_THREE
    else:
        image = Mod2Image.FULL
    return Mod2Class(image, image is Mod2Image.FULL, square)


class Mod2Relation(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    HEURISTIC_ISOMORPHIC = "Heuristic(Isomorphic)"


@dataclass(frozen=True)
class Mod2Comparison:
    relation: Mod2Relation
    evidence: str
    rigorous: bool
    classes: tuple[Mod2Class, Mod2Class]

    @property
    def isomorphic(self) -> bool:
        return self.relation is not Mod2Relation.NOT_ISOMORPHIC


def _monic_integral(E: WeierstrassCurve) -> Poly:
    """X^3 + b2 X^2 + 8 b4 X + 16 b6 (X = 4x); same splitting field as the 2-division cubic."""
    inv = invariants(E)
    return Poly(_X**3 + inv.b2 * _X**2 + 8 * inv.b4 * _X + 16 * inv.b6, _X)


def same_cubic_field(E: WeierstrassCurve, F: WeierstrassCurve, max_shift: int = 50) -> bool:
    """Do two irreducible 2-division cubics have the same splitting field?

    The roots of R(y) = Res_x(g(x), h(y - k x)) are beta_j + k alpha_i; once
    R is squarefree each root generates Q(alpha_i, beta_j), and the splitting
    fields agree exactly when some such field has degree 3, i.e. when R has
    an irreducible cubic factor.
    """
    g, h = _monic_integral(E), _monic_integral(F)
    for k in range(1, max_shift + 1):
        shifted = h.as_expr().subs(_X, _Y - k * _X)
        R = Poly(resultant(g.as_expr(), shifted, _X), _Y)
        if sympy.gcd(R, R.diff(_Y)).degree() > 0:
            continue
        return 3 in _factor_degrees(R)
    raise RuntimeError("no separating shift found")


def _parity_mismatch(E: WeierstrassCurve, F: WeierstrassCurve, prime_cap: int) -> Optional[int]:
    for p in sympy.primerange(3, prime_cap + 1):
        if E.discriminant % p == 0 or F.discriminant % p == 0:
            continue
        if (ap(E, p) - ap(F, p)) % 2:
            return p
    return None


def _cubic_type_mismatch(E: WeierstrassCurve, F: WeierstrassCurve, prime_cap: int) -> Optional[int]:
    for p in sympy.primerange(3, prime_cap + 1):
        if E.discriminant % p == 0 or F.discriminant % p == 0:
            continue
        gE = Poly(_monic_integral(E).as_expr(), _X, modulus=p)
        gF = Poly(_monic_integral(F).as_expr(), _X, modulus=p)
        tE = sorted(Poly(f, _X).degree() for f, _ in gE.factor_list()[1])
        tF = sorted(Poly(f, _X).degree() for f, _ in gF.factor_list()[1])
        if tE != tF:
            return p
    return None


def mod2_isomorphic(
    E: WeierstrassCurve, F: WeierstrassCurve, prime_cap: int = 200, exact: bool = True
) -> Mod2Comparison:
    """Compare the mod-2 representations (equivalently, the 2-division fields)."""
    cE, cF = mod2_image_class(E), mod2_image_class(F)
    classes = (cE, cF)
    no = Mod2Relation.NOT_ISOMORPHIC
    if cE.image is not cF.image:
        return Mod2Comparison(no, f"image classes differ ({cE} vs {cF})", True, classes)
    if not _rational_is_square(Fraction(E.discriminant * F.discriminant)):
        return Mod2Comparison(no, "discriminant square classes differ", True, classes)
    p = _parity_mismatch(E, F, prime_cap)
    if p is not None:
        return Mod2Comparison(no, f"a_p parity differs at p = {p}", True, classes)
    yes = Mod2Relation.ISOMORPHIC
    if cE.image is Mod2Image.TRIVIAL:
        return Mod2Comparison(yes, "both 2-division fields are Q", True, classes)
    if cE.image is Mod2Image.ORDER_TWO:
        return Mod2Comparison(yes, "both 2-division fields are Q(sqrt(Delta)) for the same square class", True, classes)
    if exact:
        if same_cubic_field(E, F):
            return Mod2Comparison(yes, "cubic fields coincide (resultant has a cubic factor)", True, classes)
        return Mod2Comparison(no, "cubic fields differ (resultant has no cubic factor)", True, classes)
    p = _cubic_type_mismatch(E, F, prime_cap)
    if p is not None:
        return Mod2Comparison(no, f"cubic factorization types differ mod {p}", True, classes)
    return Mod2Comparison(
        Mod2Relation.HEURISTIC_ISOMORPHIC, f"cubic factorization types agree for p <= {prime_cap}", False, classes
    )


# ------------------------------------------------------------------ twists


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """Twist by Q(sqrt(d)); short-model coefficients scale as a2 d, a4 d^2, a6 d^3."""
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"twist parameter must be a nonzero squarefree integer, got {d}")
    if E.a1 == 0 and E.a3 == 0:
        a = (0, E.a2 * d, 0, E.a4 * d * d, E.a6 * d**3)
    else:
        inv = invariants(E)
        a = (0, inv.b2 * d, 0, 8 * inv.b4 * d * d, 16 * inv.b6 * d**3)
    label = f"{E.label}^({d})" if E.label else ""
    return WeierstrassCurve(*a, label=label)


def _squarefree_part(q: Fraction) -> Optional[int]:
    """Unique squarefree d with q/d a rational square (None for q = 0)."""
    if q == 0:
        return None
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factor(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def twist_parameter(E: WeierstrassCurve, F: WeierstrassCurve, hints: Iterable[int] = ()) -> Optional[int]:
    """Squarefree d != 1 with F isomorphic to the d-twist of E, or None.

    Requires equal j not in {0, 1728}; the candidate d are products of -1, 2
    and the bad primes of either curve.
    """
    iE, iF = invariants(E), invariants(F)
    if iE.j != iF.j or iE.c4 == 0 or iE.c6 == 0:
        return None
    q = Fraction(iF.c6 * iE.c4, iE.c6 * iF.c4)
    primes = sorted({2} | set(bad_primes(E, hints)) | set(bad_primes(F, hints)))
    for size in range(len(primes) + 1):
        for subset in combinations(primes, size):
            base = math.prod(subset)
            for d in (base, -base):
                if _rational_is_square(q / d):
                    return None if d == 1 else d
    return None


@dataclass(frozen=True)
class TraceRecord:
    p: int
    ap_E: int
    ap_Eprime: int

    def __post_init__(self):
        for a in (self.ap_E, self.ap_Eprime):
            if a * a > 4 * self.p:
                raise ValueError(f"|a_p| = {abs(a)} violates the Hasse bound at {self.p}")


def distinguishing_prime(
    E: WeierstrassCurve, F: WeierstrassCurve, cap: int, ap_cap: int = DEFAULT_AP_CAP
) -> Optional[TraceRecord]:
    """Smallest prime p <= cap of good reduction for both with a_p(E) != a_p(F)."""
    if cap < 2:
        raise ValueError("cap must be >= 2")
    for p in sympy.primerange(2, cap + 1):
        if not (has_good_reduction(E, p) and has_good_reduction(F, p)):
            continue
        a, b = ap(E, p, ap_cap), ap(F, p, ap_cap)
        if a != b:
            return TraceRecord(int(p), a, b)
    return None


# ------------------------------------------------------------- j-invariants

CM_J_INVARIANTS = frozenset(
    Fraction(j)
    for j in (
        0,
        1728,
        -3375,
        8000,
        -32768,
        54000,
        287496,
        -884736,
        -12288000,
        16581375,
        -884736000,
        -147197952000,
        -262537412640768000,
    )
)

FINITE_LIST_J = (
    Fraction(2**11),
    Fraction(2**4 * 17**3),
    Fraction(4097**3, 2**4),
    Fraction(257**3, 2**8),
    Fraction(-(857985**3), 62**8),
    Fraction(919425**3, 496**4),
    Fraction(-3 * 18249920**3, 17**16),
    Fraction(7 * 1723187806080**3, 79**16),
)


@dataclass(frozen=True)
class JFlags:
    j: Fraction
    is_cm_j: bool
    in_rzb_finite_list: bool

    @property
    def note(self) -> str:
        return "C_E <= 2" if self.in_rzb_finite_list else ""


def cm_and_finite_j_check(E_or_j) -> JFlags:
    j = invariants(E_or_j).j if isinstance(E_or_j, WeierstrassCurve) else Fraction(E_or_j)
    return JFlags(j, j in CM_J_INVARIANTS, j in FINITE_LIST_J)


# -------------------------------------------------------------- curve files


def parse_curves(text: str) -> list[WeierstrassCurve]:
    """Lines ``label a1 a2 a3 a4 a6 [conductor]``; '#' starts a comment."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (6, 7):
            raise ValueError(f"line {no}: expected 'label a1 a2 a3 a4 a6 [conductor]'")
        try:
            nums = [int(x) for x in fields[1:]]
        except ValueError:
            raise ValueError(f"line {no}: coefficients must be integers") from None
        conductor = nums[5] if len(nums) == 6 else None
        out.append(WeierstrassCurve(*nums[:5], label=fields[0], conductor=conductor))
    return out


def read_curves(path: Union[str, Path]) -> list[WeierstrassCurve]:
    return parse_curves(Path(path).read_text())


def curve_from_text(text: str) -> WeierstrassCurve:
    """Parse ``[a1,a2,a3,a4,a6]``, ``a1,a2,a3,a4,a6`` or a short ``[a4,a6]``."""
    body = text.strip().strip("[]")
    nums = [int(x) for x in body.replace(",", " ").split()]
    return WeierstrassCurve.from_ainvs(nums)
