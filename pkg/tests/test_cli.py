import io
import json

from bmwdn.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_reduce():
    code, out = call("reduce", "--n", "4", "e2 r3 e2")
    assert code == 0
    assert out.split("\n")[1].startswith("Y(1) top=['a2']")
    code, out2 = call("reduce", "--n", "4", "e2")
    assert out == out2


def test_reduce_json_round_trip():
    code, out = call("reduce", "--n", "5", "--format", "json", "r1 e3 r4 r2 e5 r3 r3 e1 r5")
    doc = json.loads(out)
    code, again = call("reduce", "--n", "5", "--format", "json", doc["nf"]["word"])
    assert json.loads(again)["nf"] == doc["nf"]


def test_trace_flag():
    code, out = call("reduce", "--n", "4", "--format", "json", "--trace", "e2 r3 e2")
    doc = json.loads(out)
    assert len(doc["trace"]) == doc["steps"]


def test_rank():
    code, out = call("rank", "--n", "4")
    assert code == 0 and "total 1569" in out
    code, out = call("rank", "--n", "8", "--format", "json")
    assert json.loads(out)["total"] == json.loads(out)["formula"]


def test_products():
    code, out = call("mul", "--n", "4", "e2", "r3 r2")
    code2, out2 = call("reduce", "--n", "4", "e2 e3")
    assert code == code2 == 0 and out.strip() == out2.split("\n")[0]
    code, out = call("bmw-reduce", "--n", "4", "r1 r1")
    assert code == 0 and len(out.strip().split("\n")) == 3
    code, out = call("bmw-mul", "--n", "4", "--format", "json", "r2", "r2")
    assert len(json.loads(out)["terms"]) == 3


def test_checks():
    assert call("theta-rank", "--n", "4")[0] == 0
    assert call("tl", "--n", "4")[0] == 0
    assert call("hecke", "--n", "4", "--label", "Y(1)")[0] == 0
    assert call("orbits", "--n", "6")[0] == 0
    code, out = call("oracle-compare", "--n", "4", "--len", "5", "--exhaustive", "--format", "json")
    assert code == 0 and json.loads(out)["pass"]


def test_errors():
    assert call("reduce", "--n", "4", "x3")[0] == 2
    assert call("reduce", "--n", "4", "r5")[0] == 2
    assert call("reduce", "--n", "9", "r1")[0] == 2
    assert call("hecke", "--n", "7")[0] == 2
    assert call("mul", "--n", "4", "r1")[0] == 2
    assert call("frobnicate", "--n", "4")[0] == 2


def test_cache_dir(tmp_path):
    assert call("reduce", "--n", "4", "--cache-dir", str(tmp_path), "r1 e3 r4")[0] == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["orbits_n4.json", "products-n4.json", "structure-maps-n4.json"]
    assert call("reduce", "--n", "4", "--cache-dir", str(tmp_path), "r1 e3 r4")[0] == 0
