"""The Brauer algebra Br(D_n) over Z[d, 1/d] on normal-form keys."""

from __future__ import annotations

import json
from math import factorial
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .admissible import OrbitLabel, admissible, rank_formula
from .coeffs import LaurentDelta
from .normal_form import Key, NormalForm, identity_key, key_code, nf_of, nf_to_json, op_key
from .reducer import engine
from .words import Word

__all__ = [
    "MismatchDetected",
    "BrauerElement",
    "key_product",
    "br_mul",
    "rank_count",
    "theta_rank",
    "theta_formula",
    "tl_keys",
    "tl_closure_check",
    "tl_generated",
    "product_table_path",
    "save_products",
    "load_products",
]

PRODUCT_CACHE_VERSION = "products-1"


class MismatchDetected(RuntimeError):
    """A counting identity failed."""


_PRODUCTS: Dict[int, Dict[Tuple[Key, Key], Tuple[Key, int]]] = {}


def key_product(a: Key, b: Key, n: int) -> Tuple[Key, int]:
    """word(a) * word(b) = word(c) * d^k, memoized per n."""
    table = _PRODUCTS.setdefault(n, {})
    got = table.get((a, b))
    if got is None:
        eng = engine(n)
        code, shift = key_code(a)
        key, delta = b, shift
        for x in reversed(code):
            key, d = eng.left_mul_key(x, key)
            delta += d
        got = (key, delta)
        table[(a, b)] = got
    return got


def product_table_path(cache_dir: Path, n: int) -> Path:
    return Path(cache_dir) / f"products-n{n}.json"


class BrauerElement:
    """Finite Z[d, 1/d]-combination of basis keys."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Key, LaurentDelta]] = None):
        self.n = n
        self.terms: Dict[Key, LaurentDelta] = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[k] = c

    @classmethod
    def from_key(cls, n: int, key: Key, coeff: Optional[LaurentDelta] = None) -> "BrauerElement":
        return cls(n, {key: coeff if coeff is not None else LaurentDelta.one()})

    @classmethod
    def from_nf(cls, nf: NormalForm) -> "BrauerElement":
        return cls(nf.n, {nf.key: LaurentDelta.monomial(nf.delta_exp)})

    @classmethod
    def from_word(cls, w: Word, n: int) -> "BrauerElement":
        key, d = engine(n).reduce_code(w.code)
        return cls(n, {key: LaurentDelta.monomial(d + w.delta_exp)})

    @classmethod
    def identity(cls, n: int) -> "BrauerElement":
        return cls.from_key(n, identity_key(n))

    def __add__(self, other: "BrauerElement") -> "BrauerElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BrauerElement(self.n, out)

    def __neg__(self) -> "BrauerElement":
        return BrauerElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BrauerElement") -> "BrauerElement":
        return self + (-other)

    def scale(self, c: LaurentDelta) -> "BrauerElement":
        return BrauerElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "BrauerElement") -> "BrauerElement":
        return br_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, BrauerElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def op(self) -> "BrauerElement":
        return BrauerElement(self.n, {op_key(k): c for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> List[dict]:
        return [
            {"key": nf_to_json(nf_of(k)), "coeff": str(c)}
            for k, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0]))
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms.items():
            parts.append(f"({c})*[{nf_of(k)}]")
        return " + ".join(parts)

    __repr__ = __str__


def br_mul(a: BrauerElement, b: BrauerElement) -> BrauerElement:
    if a.n != b.n:
        raise ValueError("elements over different n")
    out: Dict[Key, LaurentDelta] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            k, d = key_product(ka, kb, a.n)
            c = (ca * cb).shift(d)
            out[k] = out[k] + c if k in out else c
    return BrauerElement(a.n, out)


# ----------------------------------------------------------------- counting
def rank_count(n: int) -> Tuple[List[Tuple[OrbitLabel, int, int, int]], int]:
    """Per-label |W B_Y|^2 |W(M_Y)| and the total, checked against the formula."""
    table = admissible(n).rank_table()
    total = sum(row[3] for row in table)
    expect = rank_formula(n)
    if total != expect:
        raise MismatchDetected(f"rank {total} != formula {expect} at n={n}")
    return table, total


def theta_formula(n: int) -> int:
    out = 0
    for t in range(1, n // 2 + 1):
        c = factorial(n) // (2**t * factorial(t) * factorial(n - 2 * t))
        out += c * c * factorial(n - 2 * t)
    return out


def theta_rank(n: int) -> int:
    """Rank of the Theta ideal: Y*-label orbit count, checked against the sum."""
    count = sum(row[3] for row in admissible(n).rank_table() if row[0].kind == "Y*")
    expect = theta_formula(n)
    if count != expect:
        raise MismatchDetected(f"theta rank {count} != {expect} at n={n}")
    return count


# ------------------------------------------------------------ Temperley-Lieb
def tl_keys(n: int) -> List[Key]:
    """Keys whose canonical word has no r-symbols."""
    from .normal_form import all_keys

    return [k for k in all_keys(n) if not any(c < "a" for c in key_code(k)[0])]


def tl_closure_check(n: int) -> Tuple[int, bool]:
    """Products of height-0 basis keys stay height-0 up to powers of d."""
    keys = tl_keys(n)
    inside = set(keys)
    closed = True
    for a in keys:
        for b in keys:
            k, _ = key_product(a, b, n)
            if k not in inside:
                closed = False
                break
        if not closed:
            break
    return len(keys), closed


def save_products(cache_dir: Path, n: int) -> Path:
    """Persist the memoized structure constants for n."""
    from .reducer import _key_json

    path = product_table_path(cache_dir, n)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [
        [_key_json(a), _key_json(b), _key_json(c), d]
        for (a, b), (c, d) in _PRODUCTS.get(n, {}).items()
    ]
    path.write_text(json.dumps({"version": PRODUCT_CACHE_VERSION, "n": n, "rows": rows}))
    return path


def load_products(cache_dir: Path, n: int, verify: int = 32) -> int:
    """Load cached structure constants; stale files are ignored.

    The first ``verify`` rows are recomputed and a disagreement discards the
    whole file, so an old table is never silently reused.
    """
    from .reducer import _key_unjson

    path = product_table_path(cache_dir, n)
    try:
        body = json.loads(path.read_text())
    except (OSError, ValueError):
        return 0
    if body.get("version") != PRODUCT_CACHE_VERSION or body.get("n") != n:
        return 0
    rows = [
        (_key_unjson(n, a), _key_unjson(n, b), _key_unjson(n, c), int(d))
        for a, b, c, d in body["rows"]
    ]
    for a, b, c, d in rows[:verify]:
        if key_product(a, b, n) != (c, d):
            _PRODUCTS.pop(n, None)
            return 0
    table = _PRODUCTS.setdefault(n, {})
    for a, b, c, d in rows:
        table[(a, b)] = (c, d)
    return len(rows)


def tl_generated(n: int) -> set:
    """Keys reached from the identity by left multiplication with e_1..e_n."""
    eng = engine(n)
    start = identity_key(n)
    seen = {start}
    todo = [start]
    while todo:
        key = todo.pop()
        for i in range(1, n + 1):
            k, _ = eng.left_mul_key(chr(96 + i), key)
            if k not in seen:
                seen.add(k)
                todo.append(k)
    return seen
