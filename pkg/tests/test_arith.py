from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from isobound import intervals as ivl
from isobound.arith import factor, is_square, is_squarefree, radical, valuation


@given(st.integers(1, 10**12))
def test_factor_and_radical(n):
    assert factor(n) == {int(p): e for p, e in sympy.factorint(n).items()}
    assert radical(n) == int(sympy.prod(sympy.primefactors(n)))
    assert is_squarefree(n) == (radical(n) == n)


@given(st.integers(1, 10**9), st.sampled_from([2, 3, 5, 7]))
def test_valuation(n, p):
    v = valuation(n, p)
    assert n % p**v == 0 and n % p ** (v + 1) != 0


@given(st.integers(0, 10**12))
def test_is_square(n):
    assert is_square(n) == (sympy.sqrt(n).is_integer)


def test_exact_rounding():
    assert ivl.exact_floor(lambda prec: ivl.log(22, prec) * 446 + 2254) == 3632
    with pytest.raises(ArithmeticError):
        ivl.exact_floor(lambda prec: ivl.context(prec).mpf([5, 7]), max_prec=256)
    assert ivl.to_fraction("0.23") == Fraction(23, 100)
    with pytest.raises(TypeError):
        ivl.to_fraction(0.23)
