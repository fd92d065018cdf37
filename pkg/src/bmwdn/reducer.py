"""Structural reducer: fold a word from the right onto a growing normal form.

Left multiplication of a basis key K = (Y, B, B', z) by a generator x only
touches the prefix a_B e_Y of the canonical word.  The structure map of
(x, B) records the normal form P of the short word x a_B e_Y together with
the elementary steps that reach it.

* In-orbit (P has label Y and bottom B_Y): P = (Y, xB, B_Y, h) and the
  product is (Y, xB, B', h z); the group product is taken in W(M_Y) and the
  s-level braid/cancel moves turning h.z into the canonical word of hz are
  expanded into elementary steps from small cached derivations.
* Descending: the remaining symbols of K's canonical word are multiplied
  onto P one at a time from the right, where right multiplication is left
  multiplication conjugated by opposition.

Structure maps and local derivations are found once by the search engine on
short words and cached; composition never searches the whole word.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .admissible import admissible, cox_group
from .normal_form import (
    Key,
    NormalForm,
    identity_key,
    key_code,
    nf_of,
    op_key,
)
from .search import BudgetExhausted, Inconsistent, candidate_keys, connect, connect_words, DEFAULT_BUDGET
from .words import ElementaryStep, Word, op_trace, replay, shift_trace

__all__ = [
    "ReduceFailed",
    "StepTrace",
    "StructureMap",
    "Engine",
    "engine",
    "reduce",
    "reduce_key",
    "left_mul",
    "right_mul",
    "structure_map",
]

CACHE_VERSION = "maps-1"


class ReduceFailed(RuntimeError):
    """Structural rules and the search fallback both failed."""


@dataclass(frozen=True)
class StepTrace:
    """Elementary steps applied to a stated start word."""

    start: Word
    steps: Tuple[ElementaryStep, ...]

    def replay(self, n: int) -> Word:
        code, d = replay(self.start.code, self.start.delta_exp, self.steps, n)
        return Word.from_code(code, d)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class StructureMap:
    """x a_B e_Y = template(target) * d^delta, with the steps that show it."""

    x: str
    top: int
    target: Key
    delta: int
    in_orbit: bool
    h: Optional[Tuple[int, ...]]  # generator word of h, in-orbit only
    steps: Tuple[ElementaryStep, ...]


def _shift(key: Key) -> int:
    return key_code(key)[1]


class Engine:
    """Caches for one n: structure maps, key products and local derivations."""

    def __init__(self, n: int, budget: int = DEFAULT_BUDGET):
        self.n = n
        self.budget = budget
        self.adm = admissible(n)
        self.maps: Dict[Tuple[str, int], StructureMap] = {}
        self._left: Dict[Tuple[str, Key], Tuple[Key, int]] = {}
        self._left_tr: Dict[Tuple[str, Key], Tuple[ElementaryStep, ...]] = {}
        self._local: Dict[Tuple[str, str], Tuple[int, Tuple[ElementaryStep, ...]]] = {}
        self._conv: Dict[Key, Tuple[ElementaryStep, ...]] = {}

    # ------------------------------------------------------------ pieces
    def prefix(self, key: Key) -> str:
        lab, b = key[0], key[1]
        return self.adm.a_code[b] + lab.e_code

    def structure_map(self, x: str, lab, top: int) -> StructureMap:
        got = self.maps.get((x, top))
        if got is not None:
            return got
        code = x + self.adm.a_code[top] + lab.e_code
        try:
            link = connect(code, candidate_keys(self.n, code), self.n, self.budget, want_trace=True)
        except (BudgetExhausted, Inconsistent) as exc:
            raise ReduceFailed(f"no structure map for {x} on {top}: {exc}") from exc
        tgt = link.key
        rep = self.adm.orbit(lab).rep
        in_orbit = tgt[0] == lab and tgt[2] == rep
        h = None
        if in_orbit:
            h = cox_group(lab).canonical_word(tgt[3])
        sm = StructureMap(x, top, tgt, link.delta, in_orbit, h, link.trace)
        self.maps[(x, top)] = sm
        return sm

    def local(self, src: str, dst: str) -> Tuple[int, Tuple[ElementaryStep, ...]]:
        """Cached derivation src -> dst with src = dst * d^delta."""
        got = self._local.get((src, dst))
        if got is None:
            try:
                got = connect_words(src, dst, self.n, self.budget)
            except BudgetExhausted as exc:
                raise ReduceFailed(f"no derivation {src!r} -> {dst!r}") from exc
            self._local[(src, dst)] = got
        return got

    # -------------------------------------------------------- key level
    def left_mul_raw(self, x: str, key: Key) -> Tuple[Key, int]:
        """x * template(key) = template(result) * d^delta."""
        got = self._left.get((x, key))
        if got is not None:
            return got
        lab, top, bottom, z = key
        sm = self.structure_map(x, lab, top)
        if sm.in_orbit:
            G = cox_group(lab)
            hz = G.mul(sm.target[3], z)
            new = (lab, sm.target[1], bottom, hz)
            # literal s-sequence h.z versus the canonical word of hz
            delta = sm.delta + _shift(new) - _s_shift(lab, sm.h + G.canonical_word(z))
            got = (new, delta)
        else:
            cur, delta = sm.target, sm.delta
            for y in key_code(key)[0][len(self.prefix(key)) :]:
                cur, d = self.right_mul_raw(cur, y)
                delta += d
            got = (cur, delta)
        self._left[(x, key)] = got
        return got

    def right_mul_raw(self, key: Key, y: str) -> Tuple[Key, int]:
        """template(key) * y = template(result) * d^delta."""
        ok = op_key(key)
        q, d = self.left_mul_raw(y, ok)
        return op_key(q), d + _conv_delta(key) + _conv_delta(q)

    def left_mul_key(self, x: str, key: Key) -> Tuple[Key, int]:
        """x * word(key) = word(result) * d^delta."""
        new, raw = self.left_mul_raw(x, key)
        return new, raw + _shift(key) - _shift(new)

    def reduce_code(self, code: str) -> Tuple[Key, int]:
        """code = word(key) * d^delta."""
        key = identity_key(self.n)
        delta = 0
        for x in reversed(code):
            key, d = self.left_mul_key(x, key)
            delta += d
        return key, delta

    # ----------------------------------------------------------- traces
    def left_mul_trace(self, x: str, key: Key) -> Tuple[ElementaryStep, ...]:
        """Steps taking x + template(key) to template(left_mul_raw(x, key))."""
        got = self._left_tr.get((x, key))
        if got is not None:
            return got
        lab, top, bottom, z = key
        sm = self.structure_map(x, lab, top)
        steps: List[ElementaryStep] = list(sm.steps)
        if sm.in_orbit:
            G = cox_group(lab)
            base = len(self.adm.a_code[sm.target[1]])
            seq = list(sm.h + G.canonical_word(z))
            moves, _ = G.canonicalize_moves(seq)
            steps += self._s_moves(lab, base, seq, moves)
        else:
            cur = sm.target
            for y in key_code(key)[0][len(self.prefix(key)) :]:
                steps += self.right_mul_trace(cur, y)
                cur, _ = self.right_mul_raw(cur, y)
        got = tuple(steps)
        self._left_tr[(x, key)] = got
        return got

    def right_mul_trace(self, key: Key, y: str) -> List[ElementaryStep]:
        """Steps taking template(key) + y to template(right_mul_raw(key, y))."""
        code = key_code(key)[0]
        ok = op_key(key)
        q, _ = self.left_mul_raw(y, ok)
        on_op = shift_trace(self.conv_trace(key), 1) + list(self.left_mul_trace(y, ok))
        steps = op_trace(y + code[::-1], on_op, self.n)
        return steps + list(self.conv_trace(q))

    def conv_trace(self, key: Key) -> Tuple[ElementaryStep, ...]:
        """Steps taking op(template(key)) to template(op(key))."""
        got = self._conv.get(key)
        if got is not None:
            return got
        lab, top, bottom, z = key
        G = cox_group(lab)
        gens = lab.gen_words()
        e = lab.e_code
        head = self.adm.a_code[bottom]
        word = list(G.canonical_word(z))
        steps: List[ElementaryStep] = []
        pos = len(head)
        pieces = [e]
        for g in reversed(word):
            pieces += [gens[g][0], e]
        for piece in pieces:
            if piece[::-1] != piece:
                _, st = self.local(piece[::-1], piece)
                steps += shift_trace(st, pos)
            pos += len(piece)
        rev = word[::-1]
        target = list(G.canonical_word(G.inv(z)))
        moves = G._transform_reduced(list(rev), target) if rev != target else []
        steps += self._s_moves(lab, len(head), rev, [m for m in moves])
        got = tuple(steps)
        self._conv[key] = got
        return got

    def _s_moves(self, lab, base: int, seq: List[int], moves: Sequence[tuple]) -> List[ElementaryStep]:
        """Expand s-level moves on a literal e_Y c(g1) e_Y ... block at ``base``."""
        gens = lab.gen_words()
        e = lab.e_code
        seq = list(seq)
        out: List[ElementaryStep] = []
        for mv in moves:
            if mv[0] == "braid":
                _, p, ln, new = mv
                old = seq[p : p + ln]
                new = list(new)
            else:
                _, p = mv
                ln = 2
                old = seq[p : p + 2]
                new = []
            off = base + sum(len(gens[g][0]) + len(e) for g in seq[:p])
            src = e + "".join(gens[g][0] + e for g in old)
            dst = e + "".join(gens[g][0] + e for g in new)
            _, st = self.local(src, dst)
            out += shift_trace(st, off)
            seq[p : p + ln] = new
        return out

    def reduce_trace(self, code: str) -> Tuple[Key, int, Tuple[ElementaryStep, ...]]:
        """code = word(key) * d^delta, with steps from code to the template."""
        key = identity_key(self.n)
        delta = 0
        steps: List[ElementaryStep] = []
        for i in range(len(code) - 1, -1, -1):
            steps += shift_trace(self.left_mul_trace(code[i], key), i)
            key, d = self.left_mul_key(code[i], key)
            delta += d
        return key, delta, tuple(steps)

    # ------------------------------------------------------------ cache
    def save(self, cache_dir: Path) -> Path:
        cache_dir.mkdir(parents=True, exist_ok=True)
        path = cache_dir / f"structure-maps-n{self.n}.json"
        body = {
            "version": CACHE_VERSION,
            "n": self.n,
            "maps": [
                {
                    "x": sm.x,
                    "top": sm.top,
                    "target": _key_json(sm.target),
                    "delta": sm.delta,
                    "in_orbit": sm.in_orbit,
                    "steps": [[s.rule, s.position, s.direction, list(s.bindings)] for s in sm.steps],
                }
                for sm in self.maps.values()
            ],
        }
        path.write_text(json.dumps(body))
        return path

    def load(self, cache_dir: Path) -> int:
        path = cache_dir / f"structure-maps-n{self.n}.json"
        if not path.exists():
            return 0
        body = json.loads(path.read_text())
        if body.get("version") != CACHE_VERSION or body.get("n") != self.n:
            return 0
        count = 0
        for m in body["maps"]:
            tgt = _key_unjson(self.n, m["target"])
            steps = tuple(ElementaryStep(r, p, d, tuple(b)) for r, p, d, b in m["steps"])
            lab = self.adm.label_of(m["top"])
            code = m["x"] + self.adm.a_code[m["top"]] + lab.e_code
            end, delta = replay(code, 0, steps, self.n)
            if end != key_code(tgt)[0] or delta != m["delta"]:
                continue  # stale entry: recomputed on demand
            h = cox_group(lab).canonical_word(tgt[3]) if m["in_orbit"] else None
            self.maps[(m["x"], m["top"])] = StructureMap(
                m["x"], m["top"], tgt, m["delta"], m["in_orbit"], h, steps
            )
            count += 1
        return count


def _s_shift(lab, seq: Sequence[int]) -> int:
    gens = lab.gen_words()
    k = len(lab.nodes)
    return sum(gens[g][1] - k for g in seq)


def _conv_delta(key: Key) -> int:
    # op(template(K)) = template(op K) * d^(shift(op K) - shift(K))
    return _shift(op_key(key)) - _shift(key)


def _key_json(key: Key) -> list:
    lab, b, b2, z = key
    return [str(lab), b, b2, list(z)]


def _key_unjson(n: int, doc: list) -> Key:
    from .normal_form import parse_label

    return (parse_label(doc[0], n), doc[1], doc[2], tuple(doc[3]))


_ENGINES: Dict[int, Engine] = {}


def engine(n: int) -> Engine:
    if n not in _ENGINES:
        _ENGINES[n] = Engine(n)
    return _ENGINES[n]


def _n_of(w: Word, n: Optional[int]) -> int:
    return n if n is not None else max([4] + [i for _, i in w.symbols])


def reduce_key(w: Word, n: Optional[int] = None) -> Tuple[Key, int]:
    n = _n_of(w, n)
    key, d = engine(n).reduce_code(w.code)
    return key, d + w.delta_exp


def reduce(w: Word, n: Optional[int] = None) -> Tuple[NormalForm, StepTrace]:
    """Normal form of w and the elementary steps from w to its canonical word."""
    n = _n_of(w, n)
    key, d, steps = engine(n).reduce_trace(w.code)
    return nf_of(key, d + w.delta_exp), StepTrace(w, steps)


def left_mul(x: str, nf: NormalForm) -> Tuple[NormalForm, StepTrace]:
    """Normal form of x * word(nf) with steps from x + canonical word."""
    from .words import parse_word

    code = parse_word(x).code if len(x) > 1 else x
    eng = engine(nf.n)
    key, d = eng.left_mul_key(code, nf.key)
    start = Word.from_code(code + key_code(nf.key)[0], nf.delta_exp + _shift(nf.key))
    return nf_of(key, nf.delta_exp + d), StepTrace(start, eng.left_mul_trace(code, nf.key))


def right_mul(nf: NormalForm, y: str) -> NormalForm:
    from .words import parse_word

    code = parse_word(y).code if len(y) > 1 else y
    eng = engine(nf.n)
    key, raw = eng.right_mul_raw(nf.key, code)
    return nf_of(key, nf.delta_exp + raw + _shift(nf.key) - _shift(key))


def structure_map(x: str, lab, top: int, n: int) -> StructureMap:
    return engine(n).structure_map(x, lab, top)
