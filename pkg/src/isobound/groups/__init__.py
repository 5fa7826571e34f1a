"""Finite groups over permutations, 2x2 matrices mod m and semidirect pairs."""

from .algorithms import (
    DELTA_ORDERS,
    PROBLEMATIC_LABELS,
    ConjClassPartition,
    NotNormal,
    QuotientMap,
    QuotientWitness,
    conjugacy_classes,
    derive_delta_orders,
    find_hom,
    find_isomorphism,
    has_quotient_with_element_order_gt,
    hom_exists,
    is_normal,
    is_problematic,
    iso_test,
    normal_subgroups,
    order_list_check,
    quotient,
    smallest_quotient_with_element_order_gt,
)
from .core import FiniteGroup, GroupTooLarge, close_group
from .elements import GL2_F2, M2_F2, Mat2, Perm, SDPair

__all__ = [
    "DELTA_ORDERS",
    "PROBLEMATIC_LABELS",
    "ConjClassPartition",
    "FiniteGroup",
    "GL2_F2",
    "GroupTooLarge",
    "M2_F2",
    "Mat2",
    "NotNormal",
    "Perm",
    "QuotientMap",
    "QuotientWitness",
    "SDPair",
    "close_group",
    "conjugacy_classes",
    "derive_delta_orders",
    "find_hom",
    "find_isomorphism",
    "has_quotient_with_element_order_gt",
    "hom_exists",
    "is_normal",
    "is_problematic",
    "iso_test",
    "normal_subgroups",
    "order_list_check",
    "quotient",
    "smallest_quotient_with_element_order_gt",
]
