from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from isobound.arith import radical
from isobound.cli import default_curve_file
from isobound.elliptic import (
    Mod2Image,
    Mod2Relation,
    SingularCurve,
    WeierstrassCurve,
    ap,
    ap_legendre,
    ap_naive,
    bad_primes_radical,
    cm_and_finite_j_check,
    curve_from_text,
    distinguishing_prime,
    has_good_reduction,
    invariants,
    mod2_image_class,
    mod2_isomorphic,
    parse_curves,
    quadratic_twist,
    read_curves,
    twist_parameter,
    two_division_cubic,
)

W = WeierstrassCurve
E11 = W(0, -1, 1, -10, -20)
E14 = W(1, 0, 1, 4, -6)
CORPUS = read_curves(default_curve_file())
SHORT = [W.from_ainvs(c) for c in ([1, 1], [-1, 0], [0, -2], [-3, -1], [2, 3], [-7, 10], [5, -4])]
TWIST_DS = (-1, 2, -2, 3, -3, 5)


def _scale(E, u):
    return W(*(a * u**w for a, w in zip(E.ainvs, (1, 2, 3, 4, 6))))


# ------------------------------------------------------------- examples


def test_invariant_examples():
    inv = invariants(W.from_ainvs([0, 1]))
    assert (inv.disc, inv.c4, inv.j) == (-432, 0, 0)
    inv = invariants(W.from_ainvs([-1, 0]))
    assert (inv.disc, inv.j) == (64, 1728)
    with pytest.raises(SingularCurve):
        W.from_ainvs([0, 0])


def test_ap_examples():
    assert ap(E11, 3) == -1
    assert ap(E14, 3) == -2
    assert ap(W.from_ainvs([0, 1]), 5) == 0
    assert ap_naive(E11, 3) == -1 and ap_naive(E14, 3) == -2


def test_radical_examples():
    assert bad_primes_radical(E11) == 11
    assert bad_primes_radical(W.from_ainvs([-1, 0])) == 2
    assert bad_primes_radical(W.from_ainvs([0, 1])) == 6


def test_corpus_radicals_match_conductors():
    assert len(CORPUS) >= 40
    for E in CORPUS:
        assert bad_primes_radical(E) == radical(E.conductor), E.label


def test_conductor_disagreement_detected():
    with pytest.raises(ValueError):
        bad_primes_radical(W(0, -1, 1, -10, -20, conductor=13))


def test_mod2_class_examples():
    assert mod2_image_class(W.from_ainvs([-1, 0])).image is Mod2Image.TRIVIAL
    full = mod2_image_class(W.from_ainvs([0, -2]))
    assert full.image is Mod2Image.FULL and full.absolutely_irreducible
    c3 = mod2_image_class(W.from_ainvs([-3, -1]))
    assert c3.image is Mod2Image.ORDER_THREE and not c3.absolutely_irreducible


def test_mod2_isomorphic_examples():
    E = W.from_ainvs([0, -2])
    assert mod2_isomorphic(E, E).relation is Mod2Relation.ISOMORPHIC
    for d in (5, -1, 3):
        assert mod2_isomorphic(E, quadratic_twist(E, d)).relation is Mod2Relation.ISOMORPHIC
    assert mod2_isomorphic(W.from_ainvs([-1, 0]), E).relation is Mod2Relation.NOT_ISOMORPHIC
    # two Full curves with different cubic fields
    cmp = mod2_isomorphic(E11, W(0, 0, 1, -1, 0))
    assert cmp.relation is Mod2Relation.NOT_ISOMORPHIC and cmp.rigorous
    heur = mod2_isomorphic(E, quadratic_twist(E, 5), exact=False)
    assert heur.relation is Mod2Relation.HEURISTIC_ISOMORPHIC and not heur.rigorous


def test_twist_examples():
    E = W.from_ainvs([1, 1])
    assert quadratic_twist(E, 2).ainvs == (0, 0, 0, 4, 8)
    for d in (-1, 2, 3, 5):
        assert invariants(quadratic_twist(E, d)).j == invariants(E).j
    assert twist_parameter(E, quadratic_twist(E, -3)) == -3
    assert twist_parameter(E, E) is None
    with pytest.raises(ValueError):
        quadratic_twist(E, 4)


def test_distinguishing_prime_examples():
    rec = distinguishing_prime(E11, E14, 100)
    assert (rec.p, rec.ap_E, rec.ap_Eprime) == (3, -1, -2)
    assert distinguishing_prime(E11, E11, 1000) is None
    T = quadratic_twist(E11, -1)
    rec = distinguishing_prime(E11, T, 1000)
    expected = next(
        p for p in sympy.primerange(3, 1000) if p % 4 == 3 and p != 11 and ap(E11, p) != 0
    )
    assert rec.p == expected


def test_j_flags():
    assert cm_and_finite_j_check(2048).in_rzb_finite_list
    f = cm_and_finite_j_check(0)
    assert f.is_cm_j and not f.in_rzb_finite_list
    f = cm_and_finite_j_check(1)
    assert not f.is_cm_j and not f.in_rzb_finite_list
    assert cm_and_finite_j_check(Fraction(2048)).note == "C_E <= 2"


def test_curve_parsing():
    cs = parse_curves("# comment\n11a1 0 -1 1 -10 -20 11\nfoo 0 0 0 -1 0\n")
    assert cs[0].conductor == 11 and cs[1].label == "foo"
    assert curve_from_text("[0,-1,1,-10,-20]") == E11
    assert curve_from_text("-1 0").ainvs == (0, 0, 0, -1, 0)
    with pytest.raises(ValueError):
        parse_curves("x 1 2 3\n")


# ---------------------------------------------------------- properties


def test_hasse_on_corpus():
    for E in CORPUS[:12]:
        for p in sympy.primerange(2, 10_000):
            if has_good_reduction(E, p):
                a = ap(E, p)
                assert a * a <= 4 * p


def test_two_counters_agree():
    for E in SHORT:
        for p in sympy.primerange(5, 200):
            if E.discriminant % p:
                assert ap(E, p) == ap_legendre(E.a4, E.a6, p)
                if p < 60:
                    assert ap(E, p) == ap_naive(E, p)


@pytest.mark.parametrize("d", TWIST_DS)
def test_twist_character(d):
    for E in SHORT + CORPUS[:5]:
        T = quadratic_twist(E, d)
        for p in sympy.primerange(3, 200):
            if d % p == 0 or E.discriminant % p == 0 or T.discriminant % p == 0:
                continue
            assert ap(T, p) == sympy.legendre_symbol(d % p, p) * ap(E, p)
        assert mod2_image_class(T).image is mod2_image_class(E).image


def test_cubic_root_matches_parity():
    """a_p is even exactly when the 2-division cubic has a root mod p."""
    x = sympy.Symbol("x")
    for E in CORPUS[:10] + SHORT:
        g = two_division_cubic(E).as_expr()
        checked = 0
        for p in sympy.primerange(3, 2000):
            if E.discriminant % p == 0:
                continue
            factors = sympy.Poly(g, x, modulus=p).factor_list()[1]
            has_root = any(f.degree() == 1 for f, _ in factors)
            assert (ap(E, p) % 2 == 0) == has_root
            checked += 1
            if checked == 100:
                break
        assert checked == 100


coord = st.tuples(st.sampled_from([1, 2, 3]), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@given(st.sampled_from(CORPUS[:15] + SHORT), st.lists(coord, min_size=1, max_size=2))
def test_radical_stable_under_coordinate_changes(E, changes):
    F = E
    for u, r, s, t in changes:
        F = _scale(F, u).change_coordinates(1, r, s, t)
    assert radical(F.discriminant) % bad_primes_radical(F) == 0
    assert bad_primes_radical(F) == bad_primes_radical(E)
    for p in (5, 7, 13):
        if has_good_reduction(E, p):
            assert ap(F, p) == ap(E, p)
