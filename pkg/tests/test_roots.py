from bmwdn.roots import Root, a_word, mate, proj, reflect, root_system, support
from bmwdn.words import Word


def R(*v):
    return Root(tuple(v))


A1, A2, A3, A4 = R(1, 1, 0, 0), R(-1, 1, 0, 0), R(0, -1, 1, 0), R(0, 0, -1, 1)


def test_positive_root_count():
    for n in (4, 5, 6):
        assert len(root_system(n).roots) == n * (n - 1)


def test_reflect():
    assert reflect(A2, A3) == R(-1, 0, 1, 0)
    assert reflect(A4, A1) == A4
    assert reflect(R(-1, 0, 1, 0), A2).positive() == R(0, -1, 1, 0)


def test_mate():
    assert mate(A1) == A2
    assert mate(R(0, 0, -1, 1)) == R(0, 0, 1, 1)
    for r in root_system(5).roots:
        assert mate(mate(r)) == r
        assert r.dot(mate(r)) == 0


def test_support_and_proj():
    assert support(A1) == frozenset({1})
    assert support(R(0, 1, 1, 0)) == frozenset({1, 2, 3})
    assert proj(4, A2) == 2


def test_a_word():
    assert a_word(A4, 4) == Word((), 0)
    assert a_word(R(0, -1, 0, 1), 4) == Word((("r", 3),), 0)
    # a_{alpha_j, n} e_n is the e-path j .. n
    for j in (1, 2, 3):
        w = a_word([A1, A2, A3][j - 1], 4)
        assert all(k == "e" for k, _ in w.symbols)
