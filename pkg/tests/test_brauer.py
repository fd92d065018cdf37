import pytest
from hypothesis import given

from bmwdn.brauer import (
    BrauerElement,
    key_product,
    load_products,
    rank_count,
    save_products,
    theta_formula,
    theta_rank,
    tl_closure_check,
    tl_generated,
    tl_keys,
)
from bmwdn.coeffs import LaurentDelta
from bmwdn.normal_form import identity_key
from bmwdn.reducer import reduce_key
from bmwdn.words import parse_word

from strategies import keys, words


def E(text, n=4):
    return BrauerElement.from_word(parse_word(text, n), n)


def test_e_squared():
    for i in range(1, 5):
        a = E(f"e{i}")
        assert a * a == a.scale(LaurentDelta.monomial(1))


def test_identity():
    x = E("r1 e3 r4")
    one = BrauerElement.identity(4)
    assert one * x == x and x * one == x


def test_erri():
    assert E("e2") * E("r3 r2") == E("e2 e3")


# values of (2^n+1) n!! - (2^(n-1)+1) n!, e.g. 17*105 - 9*24 at n = 4
@pytest.mark.parametrize("n,rank", [(4, 1569), (5, 29145), (6, 651915)])
def test_rank(n, rank):
    assert rank_count(n)[1] == rank


def test_theta():
    assert theta_rank(4) == 81 == 6**2 * 2 + 3**2 * 1
    assert theta_rank(5) == theta_formula(5) == 825


# fully commutative elements of D_n: (n+3)/2 * Catalan(n) - 1
@pytest.mark.parametrize("n,count", [(4, 48), (5, 167)])
def test_temperley_lieb(n, count):
    assert tl_closure_check(n) == (count, True)
    assert tl_generated(n) == set(tl_keys(n))


def test_e_in_tl():
    tl = set(tl_keys(4))
    for i in range(1, 5):
        assert reduce_key(parse_word(f"e{i}"), 4)[0] in tl


@given(keys(4), keys(4), keys(4))
def test_associativity(a, b, c):
    ab, d1 = key_product(a, b, 4)
    abc, d2 = key_product(ab, c, 4)
    bc, d3 = key_product(b, c, 4)
    abc2, d4 = key_product(a, bc, 4)
    assert (abc, d1 + d2) == (abc2, d3 + d4)


@given(words(4, 8), words(4, 8))
def test_op_reverses_products(u, v):
    a = BrauerElement.from_word(u, 4)
    b = BrauerElement.from_word(v, 4)
    assert (a * b).op() == b.op() * a.op()
    assert BrauerElement.from_word(u.op(), 4) == a.op()


def test_product_cache(tmp_path):
    key_product(identity_key(4), identity_key(4), 4)
    save_products(tmp_path, 4)
    assert load_products(tmp_path, 4) > 0
    (tmp_path / "products-n4.json").write_text('{"version": "old", "n": 4, "rows": []}')
    assert load_products(tmp_path, 4) == 0
