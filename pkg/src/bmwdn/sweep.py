"""Oracle-versus-structural comparison drivers.

The exhaustive sweep runs over every word of length <= L.  Both reducers
are folds from the right, so a word x.u is settled by the product of x with
the normal form of u: the oracle links x.template(K) to a template by an
explicit rule chain, and that chain composes with the chain for u.  Each
side therefore reduces to a table over (generator, key) pairs, and the
sweep walks all words level by level through the two tables.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .normal_form import Key, all_keys, identity_key, key_code, nf_of
from .reducer import engine
from .search import DEFAULT_BUDGET, search_key
from .words import code_str

__all__ = ["PairTables", "pair_tables", "exhaustive_compare", "random_compare", "Mismatch"]


@dataclass(frozen=True)
class Mismatch:
    word: str
    structural: Tuple[Key, int]
    oracle: Tuple[Key, int]

    def __str__(self) -> str:
        return (
            f"{code_str(self.word)}: structural {nf_of(*self.structural)} "
            f"vs oracle {nf_of(*self.oracle)}"
        )


@dataclass
class PairTables:
    n: int
    keys: List[Key]
    gens: List[str]
    # [g, k] -> product key index and delta: x * word(k) = word(k') d^delta
    s_key: np.ndarray
    s_delta: np.ndarray
    o_key: np.ndarray
    o_delta: np.ndarray
    pair_mismatches: List[Tuple[str, Key]] = field(default_factory=list)


def _gens(n: int) -> List[str]:
    return [chr(64 + i) for i in range(1, n + 1)] + [chr(96 + i) for i in range(1, n + 1)]


def pair_tables(n: int, budget: int = DEFAULT_BUDGET) -> PairTables:
    keys = all_keys(n)
    index = {k: i for i, k in enumerate(keys)}
    gens = _gens(n)
    eng = engine(n)
    shape = (len(gens), len(keys))
    s_key = np.zeros(shape, dtype=np.int32)
    o_key = np.zeros(shape, dtype=np.int32)
    s_delta = np.zeros(shape, dtype=np.int16)
    o_delta = np.zeros(shape, dtype=np.int16)
    bad = []
    for ki, key in enumerate(keys):
        code, shift = key_code(key)
        for gi, x in enumerate(gens):
            k1, d1 = eng.left_mul_key(x, key)
            link = search_key(x + code, n, budget)
            k2 = link.key
            d2 = link.delta + shift - key_code(k2)[1]
            s_key[gi, ki], s_delta[gi, ki] = index[k1], d1
            o_key[gi, ki], o_delta[gi, ki] = index[k2], d2
            if (k1, d1) != (k2, d2):
                bad.append((x, key))
    return PairTables(n, keys, gens, s_key, s_delta, o_key, o_delta, bad)


def exhaustive_compare(n: int, max_len: int, tables: Optional[PairTables] = None) -> dict:
    """Compare both reducers on every word of length <= max_len."""
    t0 = time.time()
    tab = tables or pair_tables(n)
    ident = tab.keys.index(identity_key(n))
    g = len(tab.gens)
    s_k = np.array([ident], dtype=np.int32)
    o_k = s_k.copy()
    s_d = np.zeros(1, dtype=np.int16)
    o_d = s_d.copy()
    words = 1
    mismatches: List[str] = []
    for length in range(1, max_len + 1):
        # word index at this level: x * g^(length-1) + index of the suffix
        s_k, s_d = tab.s_key[:, s_k].reshape(-1), (tab.s_delta[:, s_k] + s_d).reshape(-1)
        o_k, o_d = tab.o_key[:, o_k].reshape(-1), (tab.o_delta[:, o_k] + o_d).reshape(-1)
        diff = np.nonzero((s_k != o_k) | (s_d != o_d))[0]
        words += len(s_k)
        for idx in diff[:10]:
            mismatches.append(_decode(int(idx), length, tab.gens))
        if len(diff):
            break
    return {
        "n": n,
        "max_len": max_len,
        "words": words,
        "pairs": int(tab.s_key.size),
        "pair_mismatches": len(tab.pair_mismatches),
        "mismatches": mismatches,
        "seconds": round(time.time() - t0, 2),
        "pass": not mismatches and not tab.pair_mismatches,
    }


def _decode(idx: int, length: int, gens: List[str]) -> str:
    # level arrays are laid out as (first letter, suffix index)
    g = len(gens)
    out = []
    for rest in range(length - 1, -1, -1):
        r, idx = divmod(idx, g**rest)
        out.append(gens[r])
    return code_str("".join(out))


def random_compare(
    n: int, count: int, max_len: int, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> dict:
    """Both reducers on random words, the oracle searching each literal word."""
    t0 = time.time()
    rng = random.Random(seed)
    gens = _gens(n)
    eng = engine(n)
    bad: List[str] = []
    for _ in range(count):
        w = "".join(rng.choice(gens) for _ in range(rng.randint(1, max_len)))
        k1, d1 = eng.reduce_code(w)
        link = search_key(w, n, budget)
        k2, d2 = link.key, link.delta - key_code(link.key)[1]
        if (k1, d1) != (k2, d2):
            bad.append(str(Mismatch(w, (k1, d1), (k2, d2))))
    return {
        "n": n,
        "words": count,
        "max_len": max_len,
        "seed": seed,
        "mismatches": bad[:10],
        "mismatch_count": len(bad),
        "seconds": round(time.time() - t0, 2),
        "pass": not bad,
    }
