from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from efp6v.efp_exact import (
    MAX_ENUMERATION_N,
    EfpParams,
    efp_enumerate,
    efp_eval,
    efp_multi_integral,
    efp_polynomial,
    hankel_matrix,
)
from efp6v.exact_core import Poly

# Values from brute-force lattice enumeration (independent of the Hankel route).
ENUMERATED = {
    (3, 2, 1): (Fraction(19, 256), Fraction(640, 2187)),
    (4, 2, 0): (Fraction(97, 256), Fraction(4672, 6561)),
    (2, 2, 2): (Fraction(1, 256), Fraction(256, 6561)),
    (3, 3, 0): (Fraction(1, 512), Fraction(512, 19683)),
}

rationals01 = st.fractions(min_value=0, max_value=1, max_denominator=30)


def test_params_validation():
    with pytest.raises(ValueError):
        EfpParams(0, 1)
    with pytest.raises(ValueError):
        EfpParams(2, -1)
    p = EfpParams(4, 2, 1)
    assert p.N == 7 and p.v == Fraction(1, 2) and p.astuple() == (4, 2, 1)


@pytest.mark.parametrize("key", sorted(ENUMERATED))
def test_frozen_enumeration_values(key):
    p = EfpParams(*key)
    for alpha, expected in zip((Fraction(1, 2), Fraction(1, 3)), ENUMERATED[key]):
        assert efp_enumerate(p, alpha) == expected
        assert efp_polynomial(p)(alpha) == expected
        assert efp_eval(p, alpha) == expected


def test_small_closed_forms():
    assert efp_polynomial(EfpParams(2, 1, 0)) == Poly([1, 0, -1])
    assert efp_polynomial(EfpParams(3, 2, 1)) == Poly([1, 0, -18, 52, -60, 24, 10, -12, 3])


def test_hankel_matrix_shape():
    m = hankel_matrix(EfpParams(5, 3, 1))
    assert len(m) == 3 and all(len(row) == 3 for row in m)
    assert m[0][1] == m[1][0]


@pytest.mark.parametrize("r,s,q", [(1, 2, 0), (2, 3, 1), (3, 5, 0)])
def test_s_greater_than_r_vanishes(r, s, q):
    p = EfpParams(r, s, q)
    assert efp_polynomial(p).is_zero()
    assert efp_eval(p, Fraction(1, 3)) == 0


@given(st.integers(1, 6), st.integers(0, 2), rationals01)
def test_empty_block_is_one(r, q, alpha):
    assert efp_eval(EfpParams(r, 0, q), alpha) == 1


@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 2), rationals01)
def test_probability_bounds_and_endpoints(r, s, q, alpha):
    p = EfpParams(r, s, q)
    F = efp_polynomial(p)
    assert 0 <= F(alpha) <= 1
    assert F(Fraction(0)) == (1 if s <= r else 0)
    assert F(Fraction(1)) == (1 if s == 0 else 0)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2), rationals01)
def test_eval_agrees_with_polynomial(r, s, q, alpha):
    p = EfpParams(r, s, q)
    assert efp_eval(p, alpha) == efp_polynomial(p)(alpha)


@given(st.integers(2, 6), st.integers(1, 4), rationals01)
def test_monotone_in_block_size(r, s, alpha):
    """A larger frozen block is never more likely."""
    if s + 1 > r:
        return
    assert efp_eval(EfpParams(r, s + 1, 0), alpha) <= efp_eval(EfpParams(r, s, 0), alpha)
    assert efp_eval(EfpParams(r, s, 1), alpha) <= efp_eval(EfpParams(r, s, 0), alpha)


def test_enumeration_refuses_large_lattices():
    with pytest.raises(ValueError):
        efp_enumerate(EfpParams(MAX_ENUMERATION_N, 1, 0), Fraction(1, 2))


@pytest.mark.parametrize("r,s,q", [(4, 3, 1), (5, 4, 0), (3, 5, 0)])
def test_multi_integral_beyond_enumeration(r, s, q):
    p = EfpParams(r, s, q)
    assert efp_multi_integral(p) == efp_polynomial(p)
