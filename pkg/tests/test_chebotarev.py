from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from isobound import intervals as ivl
from isobound.chebotarev import (
    DEFAULT_TRIPLE,
    REFERENCE_COEFFICIENTS,
    COLLAPSED_TABLE,
    BoundTriple,
    CollapsedTable,
    DegreeDiscriminantData,
    TableRangeExceeded,
    TableRow,
    classical_bounds,
    collapse_table,
    collapsed_bound,
    collapsed_coefficients,
    discriminant_log_bounds,
    eval_bound,
    format_table_csv,
    parse_table_csv,
    verify_pivot,
)
from isobound.arith import primes_up_to


def test_eval_bound_examples():
    assert eval_bound(DEFAULT_TRIPLE, 1, 2) == 196
    assert eval_bound(BoundTriple.of("1.446", "0.23", "6.8"), 3, 2) == 135
    assert eval_bound(BoundTriple.of(0, 0, 0), 5, 7) == 0
    # interval input
    assert eval_bound(DEFAULT_TRIPLE, ivl.log(10), 2) == 370


def test_float_constants_rejected():
    with pytest.raises(TypeError):
        BoundTriple.of(1.5, 0, 0)


@given(
    st.integers(0, 2000), st.integers(0, 2000), st.integers(0, 2000), st.integers(0, 200), st.integers(2, 128),
    st.sampled_from(["a", "b", "c", "L", "n"]),
)
def test_eval_bound_monotone(a, b, c, L, n, which):
    t = BoundTriple(Fraction(a, 100), Fraction(b, 100), Fraction(c, 100))
    base = eval_bound(t, L, n)
    bumped = {
        "a": (BoundTriple(t.a + 1, t.b, t.c), L, n),
        "b": (BoundTriple(t.a, t.b + 1, t.c), L, n),
        "c": (BoundTriple(t.a, t.b, t.c + 1), L, n),
        "L": (t, L + 1, n),
        "n": (t, L, n + 1),
    }[which]
    assert eval_bound(*bumped) >= base


def test_discriminant_log_bounds_examples():
    low, high = discriminant_log_bounds(DegreeDiscriminantData(2, 3))
    assert abs(float(ivl.lower(low)) - 1.0986) < 1e-4
    assert abs(float(ivl.upper(high)) - 2.4849) < 1e-4
    low, high = discriminant_log_bounds(DegreeDiscriminantData(2, 2))
    assert ivl.certainly_le(low, ivl.log(4)) and ivl.certainly_le(ivl.log(4), high)


def test_discriminant_log_bounds_grid():
    for n in range(2, 129, 7):
        for p in primes_up_to(97):
            low, high = discriminant_log_bounds(DegreeDiscriminantData(n, p))
            assert ivl.certainly_le(low, high)


def test_collapsed_bound_examples():
    L = ivl.log(154)
    for n0, slope, icpt in ((96, 166, 794), (128, 223, 1127)):
        val = collapsed_bound(n0, 154)
        env = (ivl.exact(slope) * L + ivl.exact(icpt)) ** 2
        assert val <= ivl.lower(env)
    assert collapsed_bound(72, 2) > 0
    vals = [collapsed_bound(72, r) for r in (2, 6, 30, 210, 2310)]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)


def test_collapsed_bound_rejects():
    with pytest.raises(ValueError):
        collapsed_bound(72, 15)
    with pytest.raises(TableRangeExceeded):
        collapsed_bound(129, 2)


def test_reference_versus_strict_max():
    assert collapsed_coefficients(72) == REFERENCE_COEFFICIENTS[72]
    assert collapsed_coefficients(72, convention="strict-max") == BoundTriple.of("1.755", "0.23", "6.8")
    assert collapsed_coefficients(10, convention="strict-max") == BoundTriple.of("1.667", "0.23", "6.8")
    assert collapsed_bound(72, 154, convention="strict-max") > collapsed_bound(72, 154)


def test_verify_pivot_examples():
    assert verify_pivot(2, BoundTriple.of("1.755", "0", "5.7"), 72)
    assert not verify_pivot(10**12, BoundTriple.of("1.446", "0.23", "6.8"), 2)
    assert verify_pivot(0, BoundTriple.of("9", "9", "9"), 5)


def test_table_rows_pass_their_pivot():
    for row in COLLAPSED_TABLE.rows:
        for n0 in range(row.n_min, row.n_max + 1):
            assert verify_pivot(2, row.triple, n0)


def test_classical_bounds_examples():
    assert classical_bounds(10)[0] == 7000
    assert classical_bounds(1)[0] == 70
    e = ivl.context().e
    _, shape = classical_bounds(e, c2=1)
    assert abs(float(ivl.lower(shape)) - 7.389056) < 1e-5
    assert classical_bounds(10)[1] is None


def _row(n_min, n_max, lo, hi, a, b, c):
    return TableRow(n_min, n_max, Fraction(lo), None if hi is None else Fraction(hi), BoundTriple.of(a, b, c))


def test_collapse_single_row_column():
    t = collapse_table([_row(2, 2, 0, None, "1.446", "0.23", "6.8")])
    assert t.rows[0].triple == BoundTriple.of("1.446", "0.23", "6.8")
    assert t.rows[0].p0 == 2


def test_collapse_two_row_column():
    # row 2 (larger log d) has smaller coefficients and is dominated by row 1 on its range
    rows = [_row(2, 2, 0, 10, "2", "1", "8"), _row(2, 2, 10, None, "1.9", "0.5", "6")]
    t = collapse_table(rows)
    assert t.rows[0].triple == BoundTriple.of("2", "1", "8")


def test_collapse_never_tightens():
    rows = [
        _row(2, 4, 0, 5, "2", "1", "8"),
        _row(2, 4, 5, None, "1.5", "0.5", "6"),
        _row(5, 9, 0, None, "2.5", "1", "9"),
    ]
    t = collapse_table(rows)
    for r in rows:
        cr = t.row_for(r.n_min)
        for n in (r.n_min, r.n_max):
            for L in [r.logd_min] + ([r.logd_max] if r.logd_max is not None else [r.logd_min + 100]):
                assert eval_bound(cr.triple, L, n) >= eval_bound(r.triple, L, n)


def test_csv_roundtrip():
    text = "n_min,n_max,logd_min,logd_max,a,b,c\n2,2,0,inf,1.446,0.23,6.8\n3,4,0,inf,1.527,0.17,6.4\n"
    rows = parse_table_csv(text)
    assert rows[0].logd_max is None and rows[0].triple.a == Fraction("1.446")
    t = collapse_table(rows)
    again = parse_table_csv(format_table_csv(t))
    assert [r.triple for r in again] == [r.triple for r in t.rows]


def test_table_partition_checked():
    from isobound.chebotarev import CollapsedRow

    with pytest.raises(ValueError):
        CollapsedTable((CollapsedRow(2, 3, DEFAULT_TRIPLE), CollapsedRow(5, 9, DEFAULT_TRIPLE)))


@given(st.integers(2, 10**6), st.integers(1, 60))
def test_interval_log_encloses(x, widen):
    lo, hi = ivl.endpoints(ivl.log(x))
    with mpmath.workprec(400):
        true = mpmath.log(x)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= true <= mpmath.mpf(hi.numerator) / hi.denominator
    ctx = ivl.context()
    narrow = ivl.log(ctx.mpf([x, x]))
    wide = ivl.log(ctx.mpf([x, x + widen]))
    assert ivl.lower(wide) <= ivl.lower(narrow) and ivl.upper(narrow) <= ivl.upper(wide)
