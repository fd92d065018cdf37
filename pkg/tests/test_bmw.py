import random

import pytest
from hypothesis import given, settings

from bmwdn.admissible import labels_for, zstar_code
from bmwdn.bmw import (
    CORRECTIONS,
    BMWElement,
    bmw_key,
    bmw_mul,
    bmw_reduce,
    bmw_reduce_code,
    bmw_replay,
    filtration_check,
    g_inverse,
    hecke_check,
    ideal_keys,
    layer_of,
    mu_map,
    zhat_square_check,
)
from bmwdn.brauer import BrauerElement
from bmwdn.coeffs import RElem, m_value, mu_specialize
from bmwdn.normal_form import all_keys, e_hat, identity_key, key_code, op_key, parse_label, s_word
from bmwdn.reducer import reduce_key
from bmwdn.search import search_key
from bmwdn.words import RULE_BY_TAG, code_height, parse_word

from strategies import codes, keys, words

M = m_value()
L = RElem.l()
LI = RElem.l(-1)
ONE = RElem.from_int(1)


def B(text, n=4):
    return bmw_reduce(parse_word(text, n), n)


def K(text, n=4):
    return reduce_key(parse_word(text, n), n)[0]


def test_g_squared():
    for i in range(1, 5):
        want = BMWElement(4, {identity_key(4): ONE, K(f"r{i}"): -M, K(f"e{i}"): M * LI})
        assert B(f"r{i} r{i}") == want


def test_e_g_e():
    assert B("e2 r3 e2") == BMWElement(4, {K("e2"): L})
    assert B("e3 r4 e3") == B("e3").scale(L)


def test_e_g_and_g_e():
    assert B("e1 r1") == B("e1").scale(LI)
    assert B("r1 e1") == B("e1").scale(LI)


@pytest.mark.parametrize("n", [4, 5])
def test_zhat_square(n):
    rep = zhat_square_check(n)
    assert rep["pass"], rep


@pytest.mark.parametrize("n", [4, 5])
def test_g_inverse(n):
    one = BMWElement.identity(n)
    for i in range(1, n + 1):
        g = B(f"r{i}", n)
        inv = g_inverse(i, n)
        assert bmw_mul(g, inv) == one and bmw_mul(inv, g) == one
        assert mu_map(inv) == BrauerElement.from_key(n, K(f"r{i}", n))
        assert inv.op() == inv


def test_identity_and_mu():
    x = B("r1 e3 r4 r2")
    one = BMWElement.identity(4)
    assert one * x == x == x * one
    assert mu_map(x.scale(M)).is_zero()
    assert mu_map(one) == BrauerElement.identity(4)


def test_correction_rules():
    for tag, rule in CORRECTIONS.items():
        lhs = RULE_BY_TAG[tag][1]
        h = sum(1 for t in lhs.split() if t[0] == "r")
        for pat, c in rule.sides:
            assert sum(1 for t in pat.split() if t[0] == "r") < h
            assert mu_specialize(c).is_zero()
        assert mu_specialize(rule.scalar) == mu_specialize(ONE)


@given(words(4, 10))
@settings(max_examples=40)
def test_mu_of_reduce(w):
    assert mu_map(bmw_reduce(w, 4)) == BrauerElement.from_word(w, 4)


@given(keys(4), keys(4))
@settings(max_examples=40)
def test_mu_equivariance(a, b):
    x, y = bmw_key(4, a), bmw_key(4, b)
    assert mu_map(x * y) == mu_map(x) * mu_map(y)


@given(keys(4), keys(4), keys(4))
@settings(max_examples=15)
def test_associativity(a, b, c):
    x, y, z = bmw_key(4, a), bmw_key(4, b), bmw_key(4, c)
    assert (x * y) * z == x * (y * z)


@given(codes(4, 9))
@settings(max_examples=40)
def test_independent_traces_agree(code):
    link = search_key(code, 4, want_trace=True)
    assert bmw_replay(code, link.trace, link.key, 4) == bmw_reduce_code(code, 4)


@given(keys(4), keys(4))
@settings(max_examples=30)
def test_op_anti_automorphism(a, b):
    x, y = bmw_key(4, a), bmw_key(4, b)
    assert (x * y).op() == y.op() * x.op()
    assert x.op() == bmw_key(4, op_key(a))


def test_hecke_y0_defect():
    lab = parse_label("Y(0)", 4)
    for i in range(1, 5):
        s = bmw_reduce(s_word(lab, i), 4)
        defect = s * s + s.scale(M) - BMWElement.identity(4)
        assert defect == B(f"e{i}").scale(M * LI)


def test_hecke_y1_defects_are_deeper():
    lab = parse_label("Y(1)", 4)
    inside = ideal_keys(lab)
    ey = bmw_reduce(e_hat(lab), 4)
    for i in sorted(lab.gen_words()):
        s = bmw_reduce(s_word(lab, i), 4)
        defect = s * s + s.scale(M) - ey
        assert all(inside(k) for k in defect.terms)
        if i >= 1:
            assert all(layer_of(k[0]) >= 2 for k in defect.terms)


@pytest.mark.parametrize("label", [str(l) for l in labels_for(4)])
def test_hecke_n4(label):
    assert hecke_check(4, parse_label(label, 4))["pass"]


def test_filtration_sample():
    ks = all_keys(4)
    rep = filtration_check(4, random.Random(0).sample(ks, 60))
    assert rep["pass"]


def test_layers():
    for lab in labels_for(5):
        key = reduce_key(e_hat(lab), 5)[0]
        assert key[0] == lab
        if lab.kind != "Y*":
            assert layer_of(key[0]) == lab.t


def test_theta_is_an_ideal_sample():
    ks = [k for k in all_keys(4) if k[0].kind == "Y*"]
    for key in ks[:20]:
        for i in range(1, 5):
            for x in (f"r{i}", f"e{i}"):
                prod = B(x) * bmw_key(4, key)
                assert all(k[0].kind == "Y*" for k in prod.terms)
