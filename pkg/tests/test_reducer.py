from hypothesis import given

from bmwdn.admissible import admissible, zstar_code
from bmwdn.normal_form import identity_key, key_code, nf_of
from bmwdn.reducer import engine, left_mul, reduce, reduce_key, right_mul
from bmwdn.words import Word, code_height, parse_word, replay, rule_table

from strategies import codes, keys, words


def W(text, n=4):
    return parse_word(text, n)


def test_single_e():
    for i in range(1, 5):
        nf, _ = reduce(W(f"e{i}"), 4)
        assert str(nf.label) == "Y(1)"
        assert nf.top == nf.bottom
        assert nf.top.names() == [f"a{i}"]
        assert nf.z.word == () and nf.delta_exp == 0


def test_e1e2_square():
    a, _ = reduce(W("e1 e2 e1 e2"), 4)
    b, _ = reduce(W("e1 e2"), 4)
    # e1 e2 commute and square to d e_i, so the square picks up d^2
    assert a.key == b.key and str(a.label) == "Y*(1)"
    assert a.delta_exp == b.delta_exp + 2


def test_left_mul_absorbs_e():
    nf, _ = reduce(W("e2 r3 r4"), 4)
    assert nf.top.names() == ["a2"]
    got, trace = left_mul("b", nf)
    assert got.key == nf.key and got.delta_exp == nf.delta_exp + 1
    end = trace.replay(4)
    assert end.code == key_code(got.key)[0]


def test_left_mul_descends():
    from bmwdn.bmw import layer_of
    from bmwdn.search import search_reduce

    nf, _ = reduce(W("e2 r3 r1"), 4)
    got, _ = left_mul("a", nf)
    assert got == search_reduce(W("e1 e2 r3 r1"), 4)
    assert layer_of(got.label) > layer_of(nf.label)


@given(words(4, 12))
def test_trace_replays_and_never_raises_height(w):
    nf, trace = reduce(w, 4)
    code, d = w.code, w.delta_exp
    table = rule_table(4)
    h = code_height(code)
    for st in trace.steps:
        code, dd = table.apply(code, st)
        d += dd
        assert code_height(code) <= h
        h = code_height(code)
    tmpl, shift = key_code(nf.key)
    assert (code, d) == (tmpl, nf.delta_exp + shift)


@given(words(4, 10))
def test_op_anti_automorphism(w):
    nf, _ = reduce(w, 4)
    assert reduce(w.op(), 4)[0] == nf.op()


@given(words(4, 8), words(4, 8))
def test_homomorphism(u, v):
    a, _ = reduce(u, 4)
    b, _ = reduce(v, 4)
    key, d = engine(4).reduce_code(key_code(a.key)[0] + key_code(b.key)[0])
    d += key_code(a.key)[1] + key_code(b.key)[1] + a.delta_exp + b.delta_exp
    assert reduce(u * v, 4)[0] == nf_of(key, d)


@given(keys(4), codes(4, 1).filter(bool))
def test_right_mul_matches_reduce(key, y):
    nf = nf_of(key, 0)
    code, shift = key_code(key)
    assert right_mul(nf, y) == reduce(Word.from_code(code + y, shift), 4)[0]


def test_identity():
    assert reduce_key(Word((), 0), 4) == (identity_key(4), 0)


def test_n5_zstar():
    z = Word.from_code(zstar_code(5))
    nf, trace = reduce(z * z, 5)
    assert nf == reduce(W("e5 d", 5), 5)[0]
    assert trace.replay(5).code == key_code(nf.key)[0]
