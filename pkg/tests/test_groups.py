import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isobound.groups import Mat2, Perm, SDPair, close_group
from isobound.groups.algorithms import (
    DELTA_ORDERS,
    PHI_ORDERS,
    GroupTooLarge,
    conjugacy_classes,
    derive_delta_orders,
    find_isomorphism,
    has_quotient_with_element_order_gt,
    hom_exists,
    is_problematic,
    iso_test,
    normal_subgroups,
    order_list_check,
    quotient,
    smallest_quotient_with_element_order_gt,
)
from isobound.groups.catalog import (
    SMALL_GROUP_COUNTS,
    alternating,
    all_small_groups,
    c3_x_a4,
    cyclic,
    dicyclic,
    direct_product,
    extraspecial_32,
    gl2,
    sd_group,
    sd_trace_zero_elements,
    small_groups,
    symmetric,
)
from isobound.groups.io import GroupFormatError, audit, iter_dataset, parse_group, format_table

import oracles

S3 = symmetric(3)
C2 = cyclic(2)
C4 = cyclic(4)
V4 = direct_product(C2, C2)
Q8 = dicyclic(8)


def gl2_f2():
    return close_group([Mat2.of((1, 1, 0, 1), 2), Mat2.of((0, 1, 1, 0), 2)])


# ---------------------------------------------------------------- closure


def test_trivial_closure():
    assert close_group([]).order == 1


def test_semidirect_orders():
    assert sd_group(True).order == 48
    assert sd_group(False).order == 96


def test_trace_zero_subset_closed():
    elems = set(sd_trace_zero_elements())
    assert len(elems) == 48
    assert all((x * y) in elems for x in elems for y in elems)


def test_gl2_orders():
    assert [gl2(k).order for k in (1, 2, 3)] == [6 * 16 ** (k - 1) for k in (1, 2, 3)]


# --------------------------------------------------------------- catalog


def test_catalog_counts():
    for n in range(1, 25):
        assert len(small_groups(n)) == SMALL_GROUP_COUNTS[n - 1], n


def test_catalog_pairwise_distinct():
    for n in (8, 12, 16, 18, 20, 24):
        gs = small_groups(n)
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                assert not iso_test(gs[i], gs[j]), (n, i, j)


# -------------------------------------------------------- classes/normals


def test_class_examples():
    assert sorted(conjugacy_classes(S3).sizes()) == [1, 2, 3]
    assert sorted(conjugacy_classes(Q8).sizes()) == [1, 1, 2, 2, 2]
    q8_mod3 = close_group([Mat2.of((0, -1, 1, 0), 3), Mat2.of((1, 1, 1, -1), 3)])
    assert q8_mod3.order == 8
    assert sorted(conjugacy_classes(q8_mod3).sizes()) == [1, 1, 2, 2, 2]
    assert conjugacy_classes(cyclic(6)).sizes() == [1] * 6


def test_normal_examples():
    assert [len(N) for N in normal_subgroups(S3)] == [1, 3, 6]
    assert [len(N) for N in normal_subgroups(C4)] == [1, 2, 4]


def test_quotient_examples():
    top = quotient(S3, frozenset(range(6)))
    assert top.quotient.order == 1
    bottom = quotient(S3, frozenset([S3.identity]))
    assert iso_test(bottom.quotient, S3)
    A3 = next(N for N in normal_subgroups(S3) if len(N) == 3)
    assert quotient(S3, A3).quotient.order == 2


@pytest.mark.parametrize("G", all_small_groups(24), ids=lambda g: g.name or str(g.order))
def test_catalog_against_brute_force(G):
    assert sum(conjugacy_classes(G).sizes()) == G.order
    ours = normal_subgroups(G)
    assert set(ours) == oracles.normal_subgroups(G)
    brute_witness = {}
    for N in ours:
        qm = quotient(G, N)
        assert qm.is_homomorphism()
        brute_witness[N] = oracles.max_quotient_order(G, N)
    for proper in (False, True):
        w = has_quotient_with_element_order_gt(G, 3, proper=proper)
        eligible = [N for N in ours if len(N) < G.order and not (proper and len(N) == 1)]
        hits = [N for N in eligible if brute_witness[N] > 3]
        assert (w is not None) == bool(hits)
        if w is not None:
            assert len(w.normal_subgroup) == min(len(N) for N in hits)
            assert oracles.coset_order(G, w.element, w.normal_subgroup) == w.order > 3
    sq = smallest_quotient_with_element_order_gt(G, 3)
    brute_sq = [G.order // len(N) for N in ours if len(N) < G.order and brute_witness[N] > 3]
    assert sq == (min(brute_sq) if brute_sq else None)


def test_quotient_check_examples():
    w = has_quotient_with_element_order_gt(C4, 3)
    assert w is not None and len(w.normal_subgroup) == 1 and w.order == 4
    assert has_quotient_with_element_order_gt(V4, 3) is None
    assert has_quotient_with_element_order_gt(S3, 3) is None


def test_problematic_groups():
    assert is_problematic(extraspecial_32("+"))
    assert is_problematic(extraspecial_32("-"))
    assert is_problematic(direct_product(*[C2] * 5))
    assert is_problematic(c3_x_a4())
    assert not is_problematic(sd_group(True))
    assert not is_problematic(sd_group(False))
    assert not is_problematic(cyclic(8))


# ------------------------------------------------------------ hom and iso


def test_hom_examples():
    assert not hom_exists(cyclic(3), C2, surjective=True)
    assert hom_exists(S3, C2, surjective=True)
    assert hom_exists(Q8, V4, surjective=True)
    with pytest.raises(GroupTooLarge):
        hom_exists(C2, gl2(2), surjective=False)


def test_iso_examples():
    assert not iso_test(C4, V4)
    assert iso_test(S3, gl2_f2())
    perm = list(range(1, 6))
    random.Random(1).shuffle(perm)
    shuffled = S3.as_table_group().permuted([0] + perm)
    assert iso_test(S3, shuffled)
    phi = find_isomorphism(S3, shuffled)
    T, H = S3.table, shuffled.table
    assert (phi[T] == H[phi[:, None], phi[None, :]]).all()


def test_iso_against_bijections():
    groups = [G for n in range(1, 9) for G in small_groups(n)]
    for G in groups:
        for H in groups:
            if G.order == H.order:
                assert iso_test(G, H) == oracles.isomorphic(G, H)


# ---------------------------------------------------------------- orders


def test_delta_order_list():
    assert derive_delta_orders() == DELTA_ORDERS
    assert DELTA_ORDERS == (1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 32, 36, 48, 64, 72, 96, 128, 144, 192)
    assert set(PHI_ORDERS) <= {d for d in range(1, 49) if 48 % d == 0}
    assert order_list_check(48) and order_list_check(1)
    assert not order_list_check(255)


# ---------------------------------------------------------- properties


perm_gens = st.lists(st.permutations(list(range(5))), min_size=1, max_size=3)


@given(perm_gens)
def test_random_perm_groups(gens):
    G = close_group([Perm(tuple(g)) for g in gens])
    e = G.identity
    for g in range(G.order):
        assert G.mul(g, G.inverse(g)) == e
    assert sum(conjugacy_classes(G).sizes()) == G.order
    for N in normal_subgroups(G):
        assert quotient(G, N).is_homomorphism()
    perm = list(range(G.order))
    random.Random(G.order).shuffle(perm)
    assert iso_test(G, G.as_table_group().permuted(perm))


# -------------------------------------------------------------------- io


def test_parse_formats():
    G = parse_group("universe perm\n2 3 1\n2 1 3\n")
    assert G.order == 6
    H = parse_group("universe mat2 4\n1 1 0 1\n0 1 1 0\n-1 0 0 1\n")
    assert H.order == 96
    T = parse_group(format_table(G))
    assert iso_test(G, T)
    S = parse_group("universe sd\n0 1 0 0 1 0 0 1\n0 0 0 0 1 1 0 1\n0 0 0 0 0 1 1 0\n")
    assert S.order % 6 == 0
    with pytest.raises(GroupFormatError):
        parse_group("order 2\n0 1\n")


def test_audit_on_small_dataset():
    text = "group 32 49\n" + format_table(extraspecial_32("+")) + "group 48 3\n" + format_table(sd_group(True))
    res = audit(iter_dataset(text))
    assert res.checked == {"32#49": True, "48#3": False}
    # 48#3 is listed as problematic but this group is not it, so the diff reports it
    assert res.absent == ("48#3",)
    assert 192 in res.missing_orders
