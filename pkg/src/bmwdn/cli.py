"""Command-line front end: ``bmwdn VERB --n N [args]``.

Exit status: 0 on success or a passing check, 1 when a check fails,
2 on a parse or argument error, 3 when a search budget runs out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .admissible import admissible, labels_for, rank_formula, sync_orbit_cache
from .bmw import BMWElement, CheckFailed, bmw_mul, bmw_reduce, filtration_check, hecke_check
from .brauer import (
    BrauerElement,
    MismatchDetected,
    load_products,
    rank_count,
    save_products,
    theta_formula,
    theta_rank,
    tl_closure_check,
)
from .normal_form import NormalForm, key_code, nf_of, nf_to_json, parse_label
from .reducer import ReduceFailed, engine, reduce
from .search import DEFAULT_BUDGET, BudgetExhausted
from .words import ParseError, code_str, parse_word

CACHE_ENV = "BMWDN_CACHE"
MIN_N, MAX_N, MAX_HEAVY_N = 4, 8, 6
HEAVY = {"tl", "hecke", "cellcheck", "oracle-compare"}


class UsageError(ValueError):
    """Arguments outside the accepted range."""


def canonical_word(nf: NormalForm) -> str:
    """The canonical word of ``nf``, in the input grammar."""
    code, shift = key_code(nf.key)
    return code_str(code, nf.delta_exp + shift) or "1"


def _nf_doc(nf: NormalForm) -> dict:
    doc = nf_to_json(nf)
    doc["word"] = canonical_word(nf)
    return doc


def _bmw_doc(a: BMWElement) -> List[dict]:
    return [
        {"nf": _nf_doc(nf_of(k)), "coeff": c.render()}
        for k, c in sorted(a.terms.items(), key=lambda kv: canonical_word(nf_of(kv[0])))
    ]


def _bmw_text(a: BMWElement) -> str:
    if not a.terms:
        return "0"
    return "\n".join(
        f"({row['coeff']}) * [{row['nf']['word']}]" for row in _bmw_doc(a)
    )


def _words(args, count: int) -> list:
    if len(args.words) != count:
        raise UsageError(f"{args.verb} takes {count} word(s)")
    return [parse_word(w, args.n) for w in args.words]


# ------------------------------------------------------------------ verbs
def cmd_reduce(args) -> dict:
    (w,) = _words(args, 1)
    nf, trace = reduce(w, args.n)
    doc = {"input": str(w), "nf": _nf_doc(nf), "steps": len(trace)}
    if args.trace:
        doc["trace"] = [[s.rule, s.position, s.direction, list(s.bindings)] for s in trace.steps]
    return doc


def cmd_bmw_reduce(args) -> dict:
    (w,) = _words(args, 1)
    a = bmw_reduce(w, args.n)
    return {"input": str(w), "terms": _bmw_doc(a), "_text": _bmw_text(a)}


def cmd_mul(args) -> dict:
    a, b = (BrauerElement.from_word(w, args.n) for w in _words(args, 2))
    # a monoid product: one key with a monomial coefficient
    ((key, coeff),) = (a * b).terms.items()
    ((exp, _),) = coeff.c.items()
    return {"nf": _nf_doc(nf_of(key, exp))}


def cmd_bmw_mul(args) -> dict:
    a, b = (bmw_reduce(w, args.n) for w in _words(args, 2))
    c = bmw_mul(a, b)
    return {"terms": _bmw_doc(c), "_text": _bmw_text(c)}


def cmd_orbits(args) -> dict:
    adm = admissible(args.n)
    rows = []
    for orb in adm.orbits:
        lab = orb.label
        rows.append(
            {
                "label": str(lab),
                "size": len(orb.members),
                "group": "x".join(lab.components) or "1",
                "group_order": lab.group_order,
                "max_height": max(adm.height[m] for m in orb.members),
            }
        )
    return {"n": args.n, "orbits": rows}


def cmd_rank(args) -> dict:
    table, total = rank_count(args.n)
    rows = [
        {"label": str(lab), "orbit": size, "group_order": g, "contribution": c}
        for lab, size, g, c in table
    ]
    return {"n": args.n, "rows": rows, "total": total, "formula": rank_formula(args.n), "pass": True}


def cmd_theta_rank(args) -> dict:
    return {"n": args.n, "theta_rank": theta_rank(args.n), "formula": theta_formula(args.n), "pass": True}


def cmd_tl(args) -> dict:
    count, closed = tl_closure_check(args.n)
    return {"n": args.n, "keys": count, "closed": closed, "pass": closed}


def cmd_hecke(args) -> dict:
    labels = [parse_label(args.label, args.n)] if args.label else labels_for(args.n)
    reports = [hecke_check(args.n, lab, sample=args.sample, seed=args.seed) for lab in labels]
    return {"n": args.n, "labels": reports, "pass": all(r["pass"] for r in reports)}


def cmd_cellcheck(args) -> dict:
    return filtration_check(args.n)


def cmd_oracle_compare(args) -> dict:
    from .sweep import exhaustive_compare, random_compare

    if args.exhaustive:
        return exhaustive_compare(args.n, args.len)
    return random_compare(args.n, args.count, args.len, args.seed, args.budget)


VERBS: Dict[str, Callable] = {
    "reduce": cmd_reduce,
    "bmw-reduce": cmd_bmw_reduce,
    "mul": cmd_mul,
    "bmw-mul": cmd_bmw_mul,
    "orbits": cmd_orbits,
    "rank": cmd_rank,
    "theta-rank": cmd_theta_rank,
    "tl": cmd_tl,
    "hecke": cmd_hecke,
    "cellcheck": cmd_cellcheck,
    "oracle-compare": cmd_oracle_compare,
}


# ----------------------------------------------------------------- output
def _text(verb: str, doc: dict) -> str:
    if "_text" in doc:
        return doc["_text"]
    if verb == "reduce":
        nf = doc["nf"]
        return f"{nf['word']}\n{nf['label']} top={nf['top']} bottom={nf['bottom']} z={nf['z'] or '1'} d^{nf['delta']}"
    if verb == "mul":
        return doc["nf"]["word"]
    if verb == "orbits":
        return "\n".join(
            f"{r['label']:8} size={r['size']:<5} group={r['group']:<10} order={r['group_order']:<5} max_height={r['max_height']}"
            for r in doc["orbits"]
        )
    if verb == "rank":
        lines = [
            f"{r['label']:8} {r['orbit']:>5}^2 * {r['group_order']:<5} = {r['contribution']}"
            for r in doc["rows"]
        ]
        lines.append(f"total {doc['total']} (formula {doc['formula']})")
        return "\n".join(lines)
    if verb == "hecke":
        lines = [
            f"{r['label']:8} braid={len(r['braid'])} quadratic={len(r['quadratic'])} words={r['words']} pass"
            for r in doc["labels"]
        ]
        return "\n".join(lines)
    return " ".join(f"{k}={v}" for k, v in doc.items() if not k.startswith("_"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bmwdn", description="Brauer monoid and BMW algebra of type D_n")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("words", nargs="*", help='words such as "e2 r3 e2" or "r1 r1 d^2"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true", help="reduce: include the step trace")
    p.add_argument("--label", help='hecke: a single label such as "Y(1)"')
    p.add_argument("--sample", type=int, help="hecke: group elements sampled per label")
    p.add_argument("--len", type=int, default=8, help="oracle-compare: maximum word length")
    p.add_argument("--count", type=int, default=1000, help="oracle-compare: random words")
    p.add_argument("--exhaustive", action="store_true", help="oracle-compare: every word up to --len")
    return p


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = Path(args.cache_dir) if args.cache_dir else None
    try:
        if not MIN_N <= args.n <= MAX_N:
            raise UsageError(f"n must lie in {MIN_N}..{MAX_N}")
        if args.verb in HEAVY and args.n > MAX_HEAVY_N:
            raise UsageError(f"{args.verb} is limited to n <= {MAX_HEAVY_N}")
        eng = engine(args.n)
        eng.budget = args.budget
        if cache is not None:
            sync_orbit_cache(args.n, cache)
            eng.load(cache)
            load_products(cache, args.n)
        doc = VERBS[args.verb](args)
        if cache is not None:
            eng.save(cache)
            save_products(cache, args.n)
    except (ParseError, UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailed, MismatchDetected) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (BudgetExhausted, ReduceFailed) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    if args.format == "json":
        print(json.dumps({k: v for k, v in doc.items() if not k.startswith("_")}, indent=1), file=out)
    else:
        print(_text(args.verb, doc), file=out)
    return 0 if doc.get("pass", True) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
