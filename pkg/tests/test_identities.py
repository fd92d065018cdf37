import pytest

from bmwdn.identities import coxeter_laws, monoid_identities, rstar_code, structure_map_report, traced_nf
from bmwdn.words import code_str, parse_word


def test_rstar():
    assert code_str(rstar_code(4)) == "r3 r4 r2 r3 r1 r3 r2 r4 r3"
    code = rstar_code(6)
    assert code == code[::-1]


@pytest.mark.parametrize("n", [4, 5])
def test_monoid_identities(n):
    for row in monoid_identities(n):
        assert row["pass"], row


@pytest.mark.parametrize("n", [4, 5])
def test_coxeter_laws(n):
    for row in coxeter_laws(n):
        assert row["pass"], row


def test_structure_maps_n4():
    rep = structure_map_report(4)
    assert rep["pass"], rep
    # 34 admissible sets at n = 4, eight generators each
    assert rep["maps"] == 34 * 8


def test_traced_nf():
    nf = traced_nf(parse_word("e2 r3 e2"), 4)
    assert nf == traced_nf(parse_word("e2"), 4)
