"""Case selection, isogeny and open-image bounds, and empirical verification for curve pairs."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import Optional

from . import intervals as ivl
from .arith import radical
from .chebotarev import REFERENCE_COEFFICIENTS, COLLAPSED_TABLE, BoundTriple, collapsed_bound, collapsed_expression
from .elliptic import (
    DEFAULT_AP_CAP,
    Mod2Relation,
    TraceRecord,
    WeierstrassCurve,
    bad_primes_radical,
    cm_and_finite_j_check,
    distinguishing_prime,
    mod2_isomorphic,
    twist_parameter,
)

__all__ = [
    "Case",
    "PairCase",
    "BoundReport",
    "SerreReport",
    "CASE_CONSTANTS",
    "SERRE_MW",
    "SERRE_IMPROVED",
    "classify_pair",
    "isogeny_bound",
    "log_linear_bound",
    "serre_bound",
    "serre_bound_from_rad",
    "verify_pair",
    "ENVELOPES",
    "EnvelopeCheck",
    "check_envelope",
    "check_all_envelopes",
]


class Case(enum.Enum):
    MOD2_DISTINCT = "Mod2Distinct"
    MOD2_ISO_ABS_IRRED = "Mod2IsoAbsIrred"
    QUADRATIC_TWIST_NON_CM = "QuadraticTwistNonCM"
    GENERIC = "Generic"


# (slope, intercept) of p <= (slope * log rad(2 N N') + intercept)^2
CASE_CONSTANTS = {
    Case.MOD2_DISTINCT: (124, 561),
    Case.MOD2_ISO_ABS_IRRED: (124, 561),
    Case.QUADRATIC_TWIST_NON_CM: (223, 1127),
    Case.GENERIC: (482, 2880),
}
FORMULA_IDS = {
    Case.MOD2_DISTINCT: "mod2-distinct-or-abs-irred",
    Case.MOD2_ISO_ABS_IRRED: "mod2-distinct-or-abs-irred",
    Case.QUADRATIC_TWIST_NON_CM: "quadratic-twist-non-cm",
    Case.GENERIC: "generic",
}
SERRE_MW = (964, 5760)
SERRE_IMPROVED = (446, 2254)


@dataclass(frozen=True)
class PairCase:
    case: Case
    evidence: str
    rigorous: bool = True
    twist_d: Optional[int] = None

    def __str__(self) -> str:
        return self.case.value


class Status(enum.Enum):
    UNVERIFIED = "UNVERIFIED"
    VERIFIED = "VERIFIED"
    FALSIFIED = "FALSIFIED"
    INDISTINGUISHABLE = "IsogenousOrIndistinguishable"


@dataclass(frozen=True)
class BoundReport:
    case: PairCase
    rad2NN: int
    bound: int
    formula_id: str
    verified_prime: Optional[TraceRecord] = None
    status: Status = Status.UNVERIFIED
    case_bound: Optional[int] = None
    delta_bound: Optional[int] = None
    search_limit: Optional[int] = None

    def __post_init__(self):
        if self.rad2NN % 2:
            raise ValueError("rad(2 N N') must be even")
        if self.verified_prime is not None and self.verified_prime.p > self.bound:
            raise ValueError("verified prime exceeds the bound")

    def as_dict(self) -> dict:
        vp = self.verified_prime
        return {
            "case": self.case.case.value,
            "evidence": self.case.evidence,
            "rad": self.rad2NN,
            "bound": self.bound,
            "formula": self.formula_id,
            "prime": vp.p if vp else None,
            "ap1": vp.ap_E if vp else None,
            "ap2": vp.ap_Eprime if vp else None,
            "status": self.status.value,
        }


# ---------------------------------------------------------------- classify


def classify_pair(E: WeierstrassCurve, F: WeierstrassCurve, prime_cap: int = 200) -> PairCase:
    """Pick the case with the smallest applicable constant.

    Precedence: Mod2Distinct, then Mod2IsoAbsIrred, then QuadraticTwistNonCM,
    then Generic.
    """
    cmp = mod2_isomorphic(E, F, prime_cap)
    grade = "rigorous" if cmp.rigorous else "heuristic"
    if cmp.relation is Mod2Relation.NOT_ISOMORPHIC:
        return PairCase(Case.MOD2_DISTINCT, f"mod 2 not isomorphic: {cmp.evidence} ({grade})", cmp.rigorous)
    if all(c.absolutely_irreducible for c in cmp.classes):
        return PairCase(
            Case.MOD2_ISO_ABS_IRRED,
            f"mod 2 isomorphic and absolutely irreducible: {cmp.evidence} ({grade})",
            cmp.rigorous,
        )
    cmE, cmF = cm_and_finite_j_check(E), cm_and_finite_j_check(F)
    if not (cmE.is_cm_j or cmF.is_cm_j):
        d = twist_parameter(E, F)
        if d is not None:
            return PairCase(Case.QUADRATIC_TWIST_NON_CM, f"quadratic twist by d = {d}, j not CM", True, d)
    return PairCase(Case.GENERIC, f"mod 2 isomorphic, not absolutely irreducible ({cmp.evidence})", cmp.rigorous)


# ------------------------------------------------------------------ bounds


def log_linear_bound(slope, intercept, rad: int, square: bool = True) -> int:
    """ceil((slope log rad + intercept)^2), or floor(slope log rad + intercept) when square=False."""
    if rad < 2:
        raise ValueError("rad must be >= 2")
    s, c = ivl.to_fraction(slope), ivl.to_fraction(intercept)

    def build(prec):
        v = ivl.exact(s, prec) * ivl.log(rad, prec) + ivl.exact(c, prec)
        return v * v if square else v

    return ivl.exact_ceil(build) if square else ivl.exact_floor(build)


def isogeny_bound(
    case, rad2NN: int, delta_order: Optional[int] = None, *, convention: str = "reference"
) -> BoundReport:
    """Bound on the least distinguishing prime for the given case.

    With ``delta_order`` (a deviation-group order) and 2 * delta_order <= 128 the
    table-driven bound for degree 2 * delta_order is also evaluated and the
    smaller value is reported.
    """
    pc = case if isinstance(case, PairCase) else PairCase(Case(case) if isinstance(case, str) else case, "given")
    if rad2NN < 2 or rad2NN % 2:
        raise ValueError(f"rad(2 N N') must be even and >= 2, got {rad2NN}")
    slope, intercept = CASE_CONSTANTS[pc.case]
    case_value = log_linear_bound(slope, intercept, rad2NN)
    bound, formula = case_value, FORMULA_IDS[pc.case]
    delta_value = None
    if delta_order is not None:
        if delta_order < 1:
            raise ValueError("delta_order must be >= 1")
        n_upper = max(2, 2 * delta_order)
        if n_upper <= COLLAPSED_TABLE.max_degree:
            delta_value = collapsed_bound(n_upper, rad2NN, convention=convention)
            if delta_value < bound:
                bound, formula = delta_value, f"table-degree-{n_upper}"
    return BoundReport(pc, rad2NN, bound, formula, case_bound=case_value, delta_bound=delta_value)


@dataclass(frozen=True)
class SerreReport:
    rad2N: int
    c_e_bound_mw: int
    c_e_bound_improved: int
    finite_j_shortcut: bool

    def __post_init__(self):
        if self.c_e_bound_improved > self.c_e_bound_mw:
            raise ValueError("improved bound exceeds the earlier one")

    def as_dict(self) -> dict:
        out = asdict(self)
        if self.finite_j_shortcut:
            out["c_e_finite_list"] = 2
        return out


class CMCurve(ValueError):
    pass


def serre_bound_from_rad(rad2N: int, finite_j: bool = False) -> SerreReport:
    if rad2N < 2 or rad2N % 2:
        raise ValueError(f"rad(2 N) must be even and >= 2, got {rad2N}")
    mw = log_linear_bound(*SERRE_MW, rad2N, square=False)
    improved = log_linear_bound(*SERRE_IMPROVED, rad2N, square=False)
    return SerreReport(rad2N, mw, improved, finite_j)


def serre_bound(E: WeierstrassCurve) -> SerreReport:
    flags = cm_and_finite_j_check(E)
    if flags.is_cm_j:
        raise CMCurve(f"{E} has CM (j = {flags.j}); the open-image bounds need a curve without CM")
    rad = radical(2 * bad_primes_radical(E))
    return serre_bound_from_rad(rad, flags.in_rzb_finite_list)


# ------------------------------------------------------------------ verify


def verify_pair(
    E: WeierstrassCurve,
    F: WeierstrassCurve,
    cap_override: Optional[int] = None,
    *,
    prime_cap: int = 200,
    delta_order: Optional[int] = None,
    ap_cap: int = DEFAULT_AP_CAP,
) -> BoundReport:
    """Classify, bound, then search for the least distinguishing prime below the bound."""
    rad = radical(2 * bad_primes_radical(E) * bad_primes_radical(F))
    case = classify_pair(E, F, prime_cap)
    report = isogeny_bound(case, rad, delta_order)
    limit = min(x for x in (report.bound, cap_override, ap_cap) if x is not None)
    hit = distinguishing_prime(E, F, limit, ap_cap)
    if hit is not None:
        status = Status.VERIFIED
    elif limit >= report.bound:
        status = Status.FALSIFIED
    else:
        status = Status.INDISTINGUISHABLE
    return BoundReport(
        case,
        rad,
        report.bound,
        report.formula_id,
        hit,
        status,
        report.case_bound,
        report.delta_bound,
        limit,
    )


# ------------------------------------------------------ envelope arithmetic

# (n0, slope, intercept): the collapsed degree-n0 expression is dominated by
# (slope * L + intercept)^2 for every L = log rad >= 0.
ENVELOPES = ((72, 124, 561), (96, 166, 794), (128, 223, 1127))
SAMPLE_LOGS = (2, 10, 10**6)  # L = log of these


@dataclass(frozen=True)
class EnvelopeCheck:
    n0: int
    triple: BoundTriple
    slope: int
    intercept: int
    slope_ok: bool
    intercept_ok: bool
    samples: tuple[tuple[int, bool], ...]

    @property
    def ok(self) -> bool:
        return self.slope_ok and self.intercept_ok and all(v for _, v in self.samples)


def check_envelope(n0: int, slope: int, intercept: int, triple: Optional[BoundTriple] = None,
                   prec: int = ivl.DEFAULT_PREC) -> EnvelopeCheck:
    """Certify a((n0-1)L + n0 log n0) + b n0 + c <= slope L + intercept.

    Slopes are compared exactly; the intercept and the squared values at the
    sample points are compared at the pessimistic interval endpoints.
    """
    t = triple or REFERENCE_COEFFICIENTS[n0]
    slope_ok = t.a * (n0 - 1) <= slope
    const = collapsed_expression(t, n0, 0, prec)
    intercept_ok = ivl.certainly_le(const, ivl.exact(intercept, prec))
    samples = []
    for x in SAMPLE_LOGS:
        L = ivl.log(x, prec)
        lhs = collapsed_expression(t, n0, L, prec)
        rhs = ivl.exact(slope, prec) * L + ivl.exact(intercept, prec)
        samples.append((x, ivl.certainly_le(lhs * lhs, rhs * rhs)))
    return EnvelopeCheck(n0, t, slope, intercept, slope_ok, intercept_ok, tuple(samples))


def check_all_envelopes(prec: int = ivl.DEFAULT_PREC) -> list[EnvelopeCheck]:
    return [check_envelope(n0, s, c, prec=prec) for n0, s, c in ENVELOPES]
