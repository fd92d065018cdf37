"""Acceptance criteria 1-9, each recorded as one PASS/FAIL line.

The lines are printed in the pytest terminal summary, and by running this
file directly with python3.
"""

import random
import time

import pytest

from bmwdn.admissible import admissible, labels_for
from bmwdn.bmw import (
    BMWElement,
    bmw_key,
    bmw_reduce_code,
    filtration_check,
    g_inverse,
    hecke_check,
    mu_map,
    zhat_square_check,
)
from bmwdn.brauer import rank_count, theta_rank, tl_closure_check, tl_generated, tl_keys
from bmwdn.identities import coxeter_laws, monoid_identities, structure_map_report
from bmwdn.normal_form import all_keys
from bmwdn.sweep import exhaustive_compare, pair_tables, random_compare
from bmwdn.words import sym_code

RESULTS = {}


def record(k, ok, detail, t0):
    RESULTS[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.time() - t0:.1f}s)"
    assert ok, RESULTS[k]


@pytest.fixture(scope="module")
def tables4():
    return pair_tables(4)


def test_1_rank():
    t0 = time.time()
    want = {4: 1569, 5: 29145, 6: 651915}
    got = {n: rank_count(n)[1] for n in want}
    record(1, got == want, f"rank {got}", t0)


def test_2_theta_rank():
    t0 = time.time()
    got = theta_rank(4)
    ystar = sum(r[3] for r in admissible(4).rank_table() if r[0].kind == "Y*")
    record(2, got == 81 == ystar, f"theta_rank(4) = {got}, Y* rows = {ystar}", t0)


def test_3_unique_normal_form(tables4):
    t0 = time.time()
    ex = exhaustive_compare(4, 8, tables4)
    lit4 = random_compare(4, 2000, 8, seed=11)
    lit5 = random_compare(5, 10_000, 14, seed=12)
    ok = ex["pass"] and ex["words"] >= 10**7 and lit4["pass"] and lit5["pass"]
    detail = (
        f"n=4 all {ex['words']} words len<=8, {len(ex['mismatches'])} mismatches; "
        f"literal n=4 {lit4['mismatch_count']}/2000; n=5 {lit5['mismatch_count']}/10000 len<=14"
    )
    record(3, ok, detail, t0)


def test_4_identities():
    t0 = time.time()
    rows = [r for n in (4, 5) for r in monoid_identities(n)]
    laws = [r for n in (4, 5) for r in coxeter_laws(n)]
    ok = all(r["pass"] for r in rows) and all(r["pass"] for r in laws)
    n_rel = sum(r["relations"] for r in laws)
    record(4, ok, f"{len(rows)} monoid identities, {n_rel} Coxeter relations over all labels at n=4,5", t0)


def test_5_bmw_lift():
    t0 = time.time()
    rng = random.Random(5)
    keys = all_keys(4)
    mu_bad = 0
    for _ in range(1000):
        a, b = bmw_key(4, rng.choice(keys)), bmw_key(4, rng.choice(keys))
        if mu_map(a * b) != mu_map(a) * mu_map(b):
            mu_bad += 1
    assoc_bad = 0
    for _ in range(100):
        x, y, z = (bmw_key(4, rng.choice(keys)) for _ in range(3))
        if (x * y) * z != x * (y * z):
            assoc_bad += 1
    inv_ok = all(
        bmw_reduce_code(sym_code("r", i), n) * g_inverse(i, n) == BMWElement.identity(n)
        for n in (4, 5)
        for i in range(1, n + 1)
    )
    z_ok = zhat_square_check(4)["pass"] and zhat_square_check(5)["pass"]
    ok = mu_bad == 0 and assoc_bad == 0 and inv_ok and z_ok
    detail = (
        f"mu failures {mu_bad}/1000 pairs, assoc failures {assoc_bad}/100 triples, "
        f"g_i g_i^-1 = 1 {inv_ok}, z^2 identity {z_ok}"
    )
    record(5, ok, detail, t0)


def test_6_hecke():
    t0 = time.time()
    reports = [hecke_check(n, lab) for n in (4, 5) for lab in labels_for(n)]
    ok = all(r["pass"] for r in reports)
    record(6, ok, f"{len(reports)} labels at n=4,5: braid, quadratic defect, reduced-word checks", t0)


def test_7_filtration():
    t0 = time.time()
    rep = filtration_check(4)
    record(7, rep["pass"] and rep["keys"] == 1569, f"{rep['keys']} keys, {rep['products']} products", t0)


def test_8_temperley_lieb():
    t0 = time.time()
    res = {n: tl_closure_check(n) for n in (4, 5)}
    gen = all(tl_generated(n) == set(tl_keys(n)) for n in (4, 5))
    ok = all(closed for _, closed in res.values()) and gen
    record(8, ok, f"height-0 keys {[c for c, _ in res.values()]} closed, equal to e-generated span {gen}", t0)


def test_9_structure_maps(tables4):
    t0 = time.time()
    rep = structure_map_report(4)
    ok = rep["pass"] and not tables4.pair_mismatches
    detail = (
        f"{rep['maps']} maps, {rep['failure_count']} property failures; "
        f"left_mul vs re-reduction {len(tables4.pair_mismatches)}/{tables4.s_key.size} mismatches"
    )
    record(9, ok, detail, t0)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
