from itertools import product
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmwdn.admissible import cox_group, labels_for
from bmwdn.coxeter import Block, CoxeterGroup, group_order


def test_group_orders():
    for k in range(2, 7):
        assert group_order("A", k) == factorial(k + 1)
    for k in range(4, 7):
        assert group_order("D", k) == 2 ** (k - 1) * factorial(k)


@pytest.mark.parametrize("n", [4, 5])
def test_elements_enumerate_the_group(n):
    for lab in labels_for(n):
        G = cox_group(lab)
        assert len(set(G.elements())) == G.order == lab.group_order


D5 = CoxeterGroup([Block("D", 5, (1, 2, 3, 4, 5))])


@given(st.lists(st.sampled_from(D5.gens), max_size=12))
def test_canonical_word_is_reduced(word):
    w = D5.from_word(word)
    cw = D5.canonical_word(w)
    assert D5.from_word(cw) == w
    assert len(cw) == D5.length(w) <= len(word)


def test_coxeter_relations():
    G = D5
    for a, b in product(G.gens, G.gens):
        x = G.from_word([a, b] * G.braid_length(a, b))
        assert x == G.identity
    for a in G.gens:
        assert G.mul(G.gen_elem[a], G.inv(G.gen_elem[a])) == G.identity
