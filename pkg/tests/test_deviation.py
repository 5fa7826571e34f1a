from itertools import product

import pytest

from isobound.corpus import generate
from isobound.deviation import (
    TRACES_EQUAL,
    NothingToDeviate,
    RepPair,
    algebra_closure,
    compute_alpha,
    compute_beta,
    det_expansion_check,
    deviation_group,
    distinguishing_class,
    format_rep_pair,
    parse_rep_pair,
    phi_map,
    residual_absolutely_irreducible,
    twist_deviation_analysis,
)
from isobound.groups.algorithms import order_list_check
from isobound.groups.catalog import gl2
from isobound.groups.core import close_group
from isobound.groups.elements import IDENTITY, SDPair, Mat2, mat_det, mat_inv, mat_mul, mat_trace

I = (1, 0, 0, 1)
S3_GENS = ((0, -1, 1, -1), (0, 1, 1, 0))  # order 3 and order 2, full image mod 2


def c2_pair():
    return RepPair.from_generators(3, [(I, (7, 0, 0, 7))])


def s3_pair(k, twist_sign=False, conj=None):
    m = 1 << k
    gens = []
    for g in S3_GENS:
        b = g
        if twist_sign and mat_det(g) % m == m - 1:
            b = tuple((-x) % m for x in g)
        if conj is not None:
            b = mat_mul(mat_mul(conj, b, m), mat_inv(conj, m), m)
        gens.append((g, b))
    return RepPair.from_generators(k, gens)


@pytest.fixture(scope="module")
def corpus():
    return [e.rep_pair for e in generate(limit=400, ks=(3, 4), distinguishable_only=True)]


# ------------------------------------------------------------- examples


def test_c2_example():
    rp = c2_pair()
    M = algebra_closure(rp)
    assert M.rank == 2
    assert M.basis.contains((1, 0, 0, 1, 1, 0, 0, 1)) and M.basis.contains((1, 0, 0, 1, 7, 0, 0, 7))
    assert deviation_group(rp, M).order == 2
    assert compute_alpha(rp) == 2
    ab = compute_beta(rp)
    assert ab.beta == 1
    phi = phi_map(rp, ab)
    assert phi.order == 2
    assert set(phi.values) == {SDPair((0, 0, 0, 0), I), SDPair(I, I)}
    assert phi.trace_zero
    C = distinguishing_class(rp)
    assert len(C.delta_class) == 1 and C.where == ("Delta",)


def test_s3_examples():
    for k in (2, 3, 4):
        same = s3_pair(k)
        assert algebra_closure(same).rank == 4
        assert compute_alpha(same) is TRACES_EQUAL
        delta = deviation_group(same)
        assert delta.order == 6  # the residual image
        assert compute_beta(same).beta is None
        assert compute_alpha(s3_pair(k, twist_sign=True)) is TRACES_EQUAL


def test_conjugate_pair_has_infinite_beta():
    rp = s3_pair(3, conj=(1, 2, 0, 1))
    ab = compute_beta(rp)
    assert ab.beta is None
    P = ab.conjugator
    for a, b in rp.images:
        assert mat_mul(P, b, 8) == mat_mul(a, P, 8)


def test_trivial_group():
    rp = RepPair.from_generators(3, [])
    assert algebra_closure(rp).rank == 1
    assert deviation_group(rp).order == 1


def test_nothing_to_deviate():
    with pytest.raises(NothingToDeviate):
        phi_map(s3_pair(3))


def test_det_expansion():
    assert det_expansion_check((0, 0, 0, 0))
    assert det_expansion_check((1, 0, 0, 1), k=3)
    assert all(det_expansion_check(A) for A in product(range(4), repeat=4))


def test_rep_pair_roundtrip():
    rp = c2_pair()
    again = parse_rep_pair(format_rep_pair(rp))
    assert again.group.order == 2 and set(again.images) == set(rp.images)
    with pytest.raises(ValueError):
        parse_rep_pair("modulus 2^3\ngroup 2\n1 0 0 1 1 0 0 1\n")
    with pytest.raises(ValueError):
        RepPair(3, rp.group, ((I, I), (I, (1, 1, 0, 1))))  # (1,1;0,1) has order 8, not 2


# ---------------------------------------------------------- twist check


def test_twist_gl2_mod4():
    G = gl2(2)
    H = [i for i, x in enumerate(G.elements) if x.det % 4 == 1]
    rep = twist_deviation_analysis(G, H)
    assert rep.delta_order_bound <= 64
    assert rep.problematic_check == "NotApplicable" and rep.residual_absolutely_irreducible


def test_twist_reducible_residual():
    B = close_group([Mat2.of(x, 4) for x in ((1, 1, 0, 1), (-1, 0, 0, 1), (1, 0, 0, -1), (1, 0, 2, 1))])
    trivial = twist_deviation_analysis(B, range(B.order))
    assert trivial.problematic_quotient_found is False
    assert trivial.alpha_beta.alpha is None and trivial.alpha_beta.beta is None
    H = [i for i, x in enumerate(B.elements) if x.det % 4 == 1]
    rep = twist_deviation_analysis(B, H)
    assert rep.problematic_check == "passed"
    with pytest.raises(ValueError):
        twist_deviation_analysis(B, H[:3])


# ------------------------------------------------------------ corpus


def test_corpus_size(corpus):
    assert len(corpus) >= 100
    assert all(residual_absolutely_irreducible(rp) for rp in corpus)


def test_beta_at_most_alpha_and_equal(corpus):
    for rp in corpus:
        ab = compute_beta(rp)
        alpha = compute_alpha(rp)
        assert alpha is not TRACES_EQUAL
        assert ab.beta is not None and ab.beta <= alpha
        assert ab.beta == alpha


def test_corpus_delta_and_phi(corpus):
    for rp in corpus[::4]:
        M = algebra_closure(rp)
        delta = deviation_group(rp, M)
        assert delta.order <= 2**M.rank and order_list_check(delta.order)
        phi = phi_map(rp)  # raises if phi is not a homomorphism
        if all((mat_det(a) - mat_det(b)) % rp.modulus == 0 for a, b in rp.images):
            assert phi.trace_zero and phi.order <= 48
        C = distinguishing_class(rp, delta, phi)  # checks nonempty, closed, sound
        assert C.phi_class and C.where == ("Delta", "Phi")
        # the element realizing the minimal valuation lies in C
        g0 = min(
            range(rp.group.order),
            key=lambda g: _v2(mat_trace(rp.images[g][0]) - mat_trace(rp.images[g][1]), rp.k),
        )
        assert int(delta.projection[g0]) in C.delta_class


def _v2(x, k):
    x %= 1 << k
    return k if x == 0 else (x & -x).bit_length() - 1


def test_swap_symmetry(corpus):
    for rp in corpus[::20]:
        a, b = compute_beta(rp), compute_beta(rp.swapped())
        assert (a.alpha, a.beta) == (b.alpha, b.beta)
