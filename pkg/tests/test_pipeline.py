import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from isobound.chebotarev import BoundTriple, collapsed_bound
from isobound.cli import default_curve_file, suite_pairs
from isobound.elliptic import WeierstrassCurve, ap, invariants, has_good_reduction, quadratic_twist, read_curves
from isobound.pipeline import (
    Case,
    CMCurve,
    PairCase,
    Status,
    check_all_envelopes,
    check_envelope,
    classify_pair,
    isogeny_bound,
    serre_bound,
    serre_bound_from_rad,
    verify_pair,
)

W = WeierstrassCurve
E11 = W(0, -1, 1, -10, -20)
E14 = W(1, 0, 1, 4, -6)
E_2 = W.from_ainvs([0, -2])


def hp_ceil_square(a, b, rad):
    with mpmath.workdps(60):
        return int(mpmath.ceil((a * mpmath.log(rad) + b) ** 2))


def hp_floor(a, b, rad):
    with mpmath.workdps(60):
        return int(mpmath.floor(a * mpmath.log(rad) + b))


# ---------------------------------------------------------------- bounds


def test_bound_at_154_pinned():
    rep = isogeny_bound(Case.MOD2_DISTINCT, 154)
    assert rep.bound == 1405605 == hp_ceil_square(124, 561, 154)
    assert rep.formula_id == "mod2-distinct-or-abs-irred"


def test_generic_at_2():
    assert isogeny_bound(Case.GENERIC, 2).bound == hp_ceil_square(482, 2880, 2)


def test_delta_order_refinement():
    rep = isogeny_bound(Case.MOD2_DISTINCT, 154, delta_order=24)
    assert rep.delta_bound == collapsed_bound(48, 154)
    assert rep.bound == min(rep.case_bound, rep.delta_bound)
    big = isogeny_bound(Case.GENERIC, 154, delta_order=96)
    assert big.delta_bound is None and big.bound == big.case_bound


def test_odd_rad_rejected():
    with pytest.raises(ValueError):
        isogeny_bound(Case.GENERIC, 15)


@given(st.integers(1, 10**15))
def test_bound_ordering(half):
    rad = 2 * half
    b = [isogeny_bound(c, rad).bound for c in (Case.MOD2_DISTINCT, Case.QUADRATIC_TWIST_NON_CM, Case.GENERIC)]
    assert b == sorted(b)
    s = serre_bound_from_rad(rad)
    assert s.c_e_bound_improved <= s.c_e_bound_mw


def test_serre_examples():
    rep = serre_bound(E11)
    assert rep.rad2N == 22
    assert rep.c_e_bound_improved == 3632 == hp_floor(446, 2254, 22)
    assert rep.c_e_bound_mw == 8739 == hp_floor(964, 5760, 22)
    assert not rep.finite_j_shortcut


def test_serre_finite_j():
    E = W.from_ainvs([-30, 25])
    assert invariants(E).j == 2048
    rep = serre_bound(E)
    assert rep.finite_j_shortcut and rep.as_dict()["c_e_finite_list"] == 2


def test_serre_rejects_cm():
    with pytest.raises(CMCurve):
        serre_bound(W.from_ainvs([-1, 0]))


# -------------------------------------------------------------- envelopes


def test_envelopes_certified():
    checks = check_all_envelopes()
    assert [c.n0 for c in checks] == [72, 96, 128]
    assert all(c.ok for c in checks)


def test_strict_max_breaks_first_envelope():
    c = check_envelope(72, 124, 561, BoundTriple.of("1.755", "0.23", "6.8"))
    assert not c.slope_ok


# ------------------------------------------------------------- classify


def test_classify_examples():
    assert classify_pair(W.from_ainvs([-1, 0]), E_2).case is Case.MOD2_DISTINCT
    pc = classify_pair(E_2, quadratic_twist(E_2, 5))
    assert pc.case is Case.MOD2_ISO_ABS_IRRED and pc.rigorous
    assert classify_pair(E11, E14).case is Case.MOD2_DISTINCT


def test_twist_case_needs_non_cm():
    E = W(1, 0, 1, 4, -6)  # OrderTwo image, j not CM
    pc = classify_pair(E, quadratic_twist(E, 5))
    assert pc.case is Case.QUADRATIC_TWIST_NON_CM and pc.twist_d == 5
    cm = W.from_ainvs([-1, 0])
    assert classify_pair(cm, quadratic_twist(cm, 5)).case is Case.GENERIC


def test_classify_swap_stable():
    curves = read_curves(default_curve_file())
    for E, F in suite_pairs(curves)[:30]:
        assert classify_pair(E, F).case is classify_pair(F, E).case


# --------------------------------------------------------------- verify


def test_verify_11a1_14a1():
    rep = verify_pair(E11, E14)
    assert rep.rad2NN == 154 and rep.status is Status.VERIFIED
    assert rep.verified_prime.p == 3 and rep.verified_prime.p <= rep.bound


def test_verify_same_curve():
    rep = verify_pair(E11, E11, cap_override=500)
    assert rep.status is Status.INDISTINGUISHABLE and rep.verified_prime is None


def test_verify_twist():
    T = quadratic_twist(E_2, 5)
    rep = verify_pair(E_2, T)
    expected = next(
        p
        for p in sympy.primerange(3, 1000)
        if has_good_reduction(E_2, p) and has_good_reduction(T, p)
        and sympy.legendre_symbol(5 % p, p) == -1 and ap(E_2, p) != 0
    )
    assert rep.verified_prime.p == expected <= rep.bound


def test_verify_corpus():
    pairs = suite_pairs(read_curves(default_curve_file()))
    assert len(pairs) >= 20
    for E, F in pairs:
        rep = verify_pair(E, F)
        assert rep.status is Status.VERIFIED, (E.label, F.label)
        assert rep.verified_prime.p <= rep.bound


def test_report_invariants():
    with pytest.raises(ValueError):
        from isobound.pipeline import BoundReport

        BoundReport(PairCase(Case.GENERIC, "x"), 15, 10, "generic")
