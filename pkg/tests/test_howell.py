from itertools import product

from hypothesis import given, strategies as st

from isobound.howell import brute_force_span, howell_form, kernel, v2


def matrices(max_k=3, max_rows=3, max_cols=3):
    return st.integers(1, max_k).flatmap(
        lambda k: st.integers(1, max_cols).flatmap(
            lambda n: st.tuples(
                st.just(k),
                st.just(n),
                st.lists(st.lists(st.integers(0, (1 << k) - 1), min_size=n, max_size=n), max_size=max_rows),
            )
        )
    )


def test_v2():
    assert v2(0, 3) == 3
    assert v2(8, 3) == 3
    assert v2(12, 4) == 2
    assert v2(5, 4) == 0


def test_small_example():
    H = howell_form([[2, 4]], 3)
    # span of (2, 4) mod 8 has 4 elements; Howell adds 4*(1,2) = (4, 0)
    assert H.size() == 4
    assert H.contains((4, 0))
    assert not H.contains((1, 2))


@given(matrices())
def test_span_matches_brute_force(data):
    k, n, rows = data
    H = howell_form(rows, k, n)
    assert H.span() == brute_force_span(rows, k, n)
    assert H.size() == len(brute_force_span(rows, k, n))


@given(matrices())
def test_form_is_canonical(data):
    k, n, rows = data
    H = howell_form(rows, k, n)
    again = howell_form(list(H.rows) + list(reversed(rows)), k, n)
    assert again.rows == H.rows


@given(matrices(max_k=3, max_cols=2))
def test_reduce_is_coset_invariant(data):
    k, n, rows = data
    H = howell_form(rows, k, n)
    span = H.span()
    m = 1 << k
    for v in product(range(m), repeat=n):
        r = H.reduce(v)
        assert H.contains([(a - b) % m for a, b in zip(v, r)])
        assert (tuple(v) in span) == (not any(r))
        s = next(iter(span))
        assert H.reduce([(a + b) % m for a, b in zip(v, s)]) == r


@given(matrices(max_k=3, max_cols=3))
def test_kernel_matches_brute_force(data):
    k, n, rows = data
    if not rows:
        return
    m = 1 << k
    K = kernel(rows, k, n)
    brute = {
        x
        for x in product(range(m), repeat=len(rows))
        if all(sum(a * r[j] for a, r in zip(x, rows)) % m == 0 for j in range(n))
    }
    assert K.span() == brute
