from hypothesis import given
from hypothesis import strategies as st

from bmwdn.coeffs import (
    LaurentDelta,
    NotInImage,
    RElem,
    m_value,
    mu_specialize,
    parse_laurent,
    parse_relem,
    r_add,
    r_mul,
)
import pytest

D = RElem.delta()
L = RElem.l()
ONE = RElem.from_int(1)


def test_additive_identity():
    x = L + D
    assert r_add(x, RElem()) == x


def test_unit_inverse():
    assert r_mul(L, RElem.l(-1)) == ONE


def test_m_times_d_minus_one():
    assert r_mul(m_value(), D - ONE) == RElem.l(-1) - L


def test_m_at_l_one_vanishes():
    assert mu_specialize(m_value()) == LaurentDelta()


def test_m_squared():
    lhs = m_value() * m_value() * (D - ONE) * (D - ONE)
    rhs = (RElem.l(-1) - L) * (RElem.l(-1) - L)
    assert lhs == rhs


def test_specializations():
    assert mu_specialize(ONE - m_value()) == LaurentDelta.one()
    assert mu_specialize(RElem.l(-1)) == LaurentDelta.one()
    assert mu_specialize(D * m_value() + L) == LaurentDelta.one()


def test_not_in_image():
    with pytest.raises(NotInImage):
        mu_specialize(_inv_dm1())


def _inv_dm1():
    # 1/(d-1), outside Z[d, 1/d]
    from bmwdn.coeffs import Rat

    return RElem({0: Rat({0: 1}, 1)})


small = st.builds(
    lambda a, b, c, e: RElem.from_int(a) + RElem.delta(b) * RElem.l(c) + m_value() * RElem.l(e),
    st.integers(-3, 3),
    st.integers(-2, 2),
    st.integers(-2, 2),
    st.integers(-2, 2),
)


@given(small, small, small)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == RElem()


@given(small, small)
def test_specialization_is_a_ring_map(a, b):
    assert mu_specialize(a * b) == mu_specialize(a) * mu_specialize(b)
    assert mu_specialize(a + b) == mu_specialize(a) + mu_specialize(b)


@given(small)
def test_render_round_trip(a):
    assert parse_relem(a.render()) == a


@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5)))
def test_laurent_round_trip(c):
    x = LaurentDelta(c)
    assert parse_laurent(str(x)) == x
