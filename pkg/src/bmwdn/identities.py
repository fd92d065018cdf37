"""Named monoid identities and structure-map properties, checked by the engine.

Each check reduces both sides with the structural reducer and replays the
elementary-step trace of every reduction, so a pass means an explicit rule
chain was exhibited, not just that two normal forms printed the same.
"""

from __future__ import annotations

from typing import Dict, List

from .admissible import admissible, cox_group, labels_for, zstar_code
from .normal_form import NormalForm, e_hat, key_code, nf_of, s_word
from .reducer import engine, reduce
from .words import Word, code_str, sym_code

__all__ = ["rstar_code", "traced_nf", "monoid_identities", "coxeter_laws", "structure_map_report"]


def _w(i: int, j: int) -> str:
    return sym_code("r", i) + sym_code("r", j)


def rstar_code(n: int) -> str:
    """r_n* = w_{n,2} r_1 w_{2,n} with w_{2,n} = r3 r2 r4 r3 ... r_n r_{n-1}."""
    w2n = "".join(_w(k, k - 1) for k in range(3, n + 1))
    return w2n[::-1] + sym_code("r", 1) + w2n


def traced_nf(w: Word, n: int) -> NormalForm:
    """Normal form of w, after checking that its trace replays onto the canonical word."""
    nf, trace = reduce(w, n)
    end = trace.replay(n)
    code, shift = key_code(nf.key)
    if end.code != code or end.delta_exp != nf.delta_exp + shift:
        raise AssertionError(f"trace of {w} ends at {end}, not the canonical word of {nf}")
    return nf


def _row(name: str, lhs: Word, rhs: Word, n: int) -> dict:
    a = traced_nf(lhs, n)
    b = traced_nf(rhs, n)
    return {"identity": name, "lhs": str(a), "rhs": str(b), "pass": a == b}


def monoid_identities(n: int) -> List[dict]:
    """z* z* = d e_n, r_n* e_n = z*, e_n r_n* = z* and z* = z*^op."""
    z = Word.from_code(zstar_code(n))
    en = Word.from_code(sym_code("e", n))
    rs = Word.from_code(rstar_code(n))
    return [
        _row("z*z* = d e_n", z * z, en * Word((), 1), n),
        _row("r_n* e_n = z*", rs * en, z, n),
        _row("e_n r_n* = z*", en * rs, z, n),
        _row("z*^op = z*", z.op(), z, n),
    ]


def coxeter_laws(n: int) -> List[dict]:
    """s_i s_i = e^_Y, commuting and braid relations for every label."""
    out = []
    for lab in labels_for(n):
        G = cox_group(lab)
        gens = sorted(lab.gen_words())
        s = {i: s_word(lab, i) for i in gens}
        one = e_hat(lab)
        bad = []
        checked = 0
        for i in gens:
            checked += 1
            if traced_nf(s[i] * s[i], n) != traced_nf(one, n):
                bad.append(f"s{i}^2")
            for j in gens:
                if j <= i:
                    continue
                checked += 1
                if j in G.adj[i]:
                    lhs, rhs = s[i] * s[j] * s[i], s[j] * s[i] * s[j]
                    tag = f"s{i}s{j}s{i}"
                else:
                    lhs, rhs = s[i] * s[j], s[j] * s[i]
                    tag = f"s{i}s{j}"
                if traced_nf(lhs, n) != traced_nf(rhs, n):
                    bad.append(tag)
        out.append({"label": str(lab), "relations": checked, "failures": bad, "pass": not bad})
    return out


def structure_map_report(n: int) -> Dict[str, object]:
    """Properties of x A_B for every orbit member B and generator x.

    r_i stays in the orbit, landing on r_i B, and h is the identity when the
    height goes up.  e_i with |e_i B| = |B| stays in the orbit on e_i B and
    does not raise the height.  e_i with |e_i B| > |B| leaves for a larger set.
    """
    adm = admissible(n)
    eng = engine(n)
    bad: List[str] = []
    maps = 0
    for orb in adm.orbits:
        lab = orb.label
        for top in orb.members:
            for i in range(1, n + 1):
                for kind in "re":
                    x = sym_code(kind, i)
                    sm = eng.structure_map(x, lab, top)
                    maps += 1
                    img = adm.act(x, top)
                    tag = f"{code_str(x)} on {lab} member {orb.index[top]}"
                    grows = bin(img).count("1") > bin(top).count("1")
                    if kind == "r" or not grows:
                        if not sm.in_orbit or sm.target[1] != img:
                            bad.append(f"{tag}: left the orbit")
                        elif kind == "r" and adm.height[img] > adm.height[top] and sm.h:
                            bad.append(f"{tag}: h = {sm.h} after a height increase")
                        elif kind == "e" and adm.height[img] > adm.height[top]:
                            bad.append(f"{tag}: height increased")
                    else:
                        tgt = sm.target
                        if sm.in_orbit or bin(tgt[1]).count("1") <= bin(top).count("1"):
                            bad.append(f"{tag}: did not reach a larger set")
    return {"n": n, "maps": maps, "failures": bad[:10], "failure_count": len(bad), "pass": not bad}
