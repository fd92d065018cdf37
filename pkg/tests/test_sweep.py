from bmwdn.sweep import _decode, exhaustive_compare, pair_tables, random_compare


def test_decode():
    gens = list("ABab")
    # level arrays are (first letter, suffix); index 1*16 + 2*4 + 3 -> B a b
    assert _decode(1 * 16 + 2 * 4 + 3, 3, gens) == "r2 e1 e2"


def test_short_exhaustive():
    rep = exhaustive_compare(4, 4)
    assert rep["pass"] and rep["words"] == sum(8**k for k in range(5))


def test_random():
    rep = random_compare(4, 30, 10, seed=5)
    assert rep["pass"] and rep["mismatch_count"] == 0
