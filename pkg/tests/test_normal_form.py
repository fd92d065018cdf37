import pytest
from hypothesis import given

from bmwdn.admissible import admissible, labels_for, rank_formula
from bmwdn.normal_form import (
    all_keys,
    cox_identity,
    cox_inv,
    cox_mul,
    e_hat,
    identity_key,
    key_code,
    nf_from_json,
    nf_of,
    nf_to_json,
    nf_to_word,
    op_key,
    parse_label,
    s_word,
)
from bmwdn.reducer import reduce
from bmwdn.words import Word, parse_word

from strategies import keys


@pytest.mark.parametrize("n", [4, 5])
def test_key_count_is_rank(n):
    assert len(all_keys(n)) == rank_formula(n)
    assert len(set(all_keys(n))) == rank_formula(n)


def test_s_words():
    lab = parse_label("Y(1)", 4)
    assert s_word(lab, 0) == Word.from_code("dcbAcd" + "d", -2)
    y0 = parse_label("Y(0)", 4)
    for i in range(1, 5):
        assert s_word(y0, i) == parse_word(f"r{i}")
    ys = parse_label("Y*(1)", 5)
    assert s_word(ys, 1).code == "D" + ys.e_code
    assert s_word(ys, 1).delta_exp == -len(ys.nodes)


def test_cox_elem():
    for lab in labels_for(5):
        one = cox_identity(lab)
        assert cox_inv(one) == one
        for i in lab.gen_words():
            from bmwdn.normal_form import CoxElem
            from bmwdn.admissible import cox_group

            G = cox_group(lab)
            s = CoxElem.from_elem(lab, G.gen_elem[i])
            assert cox_mul(s, s) == one
            for j in lab.gen_words():
                t = CoxElem.from_elem(lab, G.gen_elem[j])
                if G.commute(i, j):
                    assert cox_mul(s, t) == cox_mul(t, s)


def test_identity_word():
    assert nf_to_word(nf_of(identity_key(4))) == Word((), 0)


def test_e4_canonical_word():
    nf, _ = reduce(parse_word("e4"), 4)
    assert str(nf.label) == "Y(1)" and nf.delta_exp == 0
    assert nf_to_word(nf) == Word.from_code("d", 0)


@given(keys(4))
def test_canonical_word_round_trip(key):
    nf = nf_of(key, 1)
    assert reduce(nf_to_word(nf), 4)[0] == nf


@given(keys(4))
def test_op_key(key):
    ok = op_key(key)
    assert op_key(ok) == key
    assert (ok[1], ok[2]) == (key[2], key[1])


@given(keys(4))
def test_json_round_trip(key):
    nf = nf_of(key, -3)
    assert nf_from_json(nf_to_json(nf)) == nf


def test_e_hat():
    lab = parse_label("Y(2)", 4)
    assert e_hat(lab).delta_exp == -2
