from hypothesis import given, settings

from bmwdn.admissible import zstar_code
from bmwdn.normal_form import identity_key, nf_of
from bmwdn.reducer import engine
from bmwdn.search import candidate_keys, connect_words, search_key, search_reduce
from bmwdn.words import Word, parse_word, replay

from strategies import codes


def W(text):
    return parse_word(text, 4)


def test_zstar_square():
    z = Word.from_code(zstar_code(4))
    assert search_reduce(z * z, 4) == search_reduce(W("e4 d"), 4)


def test_rr_is_identity():
    for i in range(1, 5):
        assert search_reduce(W(f"r{i} r{i}"), 4) == nf_of(identity_key(4))


def test_erri():
    assert search_reduce(W("e2 r3 r2"), 4) == search_reduce(W("e2 e3"), 4)


def test_candidates_share_top_and_bottom():
    cands = candidate_keys(4, W("e2 r3 e1").code)
    assert len({(k[0], k[1], k[2]) for k in cands}) == 1


@given(codes(4, 9))
@settings(max_examples=40)
def test_trace_reaches_template(code):
    link = search_key(code, 4, want_trace=True)
    from bmwdn.normal_form import key_code

    end, d = replay(code, 0, link.trace, 4)
    assert end == key_code(link.key)[0]
    assert d == link.delta


def test_connect_words():
    d, steps = connect_words("bCb", "b", 4)
    assert d == 0
    assert replay("bCb", 0, steps, 4) == ("b", 0)


@given(codes(4, 9))
@settings(max_examples=40)
def test_agrees_with_structural(code):
    link = search_key(code, 4)
    from bmwdn.normal_form import key_code

    key, d = engine(4).reduce_code(code)
    assert (key, d) == (link.key, link.delta - key_code(link.key)[1])
