"""Exhaustive search reducer over the rewrite rules.

The search answers "which basis key is this word equal to" by exhibiting a
chain of rule applications linking the word to the canonical word of a key.
Every rule is an identity in the monoid, so a chain is a proof; no structural
knowledge beyond the key templates is used.  This is the correctness oracle
for the structural reducer, and the engine that finds the small elementary
derivations the structural reducer stores.

Stages, for a start word w and candidate keys K with the right orbit label
and top/bottom sets (both are read off semantically):

1. descent: breadth-first over height- and length-preserving moves until a
   strictly shortening or height-lowering move appears; take it, restart.
2. match: every candidate template gets the same treatment using H-moves
   only (so its derivation can be inverted); any word shared by the two
   regions links w to that template.
3. slack: if nothing meets, both regions are widened by one letter of
   lengthening at a time until they do.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .admissible import admissible, cox_group
from .normal_form import Key, NormalForm, key_code, nf_of
from .words import ElementaryStep, Move, Word, code_height, rule_table

__all__ = [
    "BudgetExhausted",
    "Inconsistent",
    "Region",
    "Link",
    "TemplateMemo",
    "search_reduce",
    "search_key",
    "connect",
    "connect_words",
    "candidate_keys",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 200_000
MAX_SLACK = 6


class BudgetExhausted(RuntimeError):
    """A region grew past the budget before the search concluded."""


class Inconsistent(RuntimeError):
    """Two distinct keys were linked to the same word."""


# ---------------------------------------------------------------- move sets
@dataclass(frozen=True)
class _MoveSets:
    same: Dict[str, Tuple[Move, ...]]  # height and length preserved
    down: Dict[str, Tuple[Move, ...]]  # (height, length) lowered
    up: Dict[str, Tuple[Move, ...]]  # length raised, height kept
    h_down: Dict[str, Tuple[Move, ...]]  # H-moves among ``down``


@lru_cache(maxsize=None)
def _moves(n: int) -> _MoveSets:
    same: Dict[str, List[Move]] = {}
    down: Dict[str, List[Move]] = {}
    up: Dict[str, List[Move]] = {}
    h_down: Dict[str, List[Move]] = {}
    for lhs, mvs in rule_table(n).by_lhs.items():
        for mv in mvs:
            dh = code_height(mv.rhs) - code_height(lhs)
            dl = len(mv.rhs) - len(lhs)
            if dh == 0 and dl == 0:
                same.setdefault(lhs, []).append(mv)
            elif (dh, dl) < (0, 0):
                down.setdefault(lhs, []).append(mv)
                if mv.rule.startswith("H"):
                    h_down.setdefault(lhs, []).append(mv)
            else:
                up.setdefault(lhs, []).append(mv)
    freeze = lambda d: {k: tuple(v) for k, v in d.items()}
    return _MoveSets(freeze(same), freeze(down), freeze(up), freeze(h_down))


def _hits(code: str, table: Dict[str, Tuple[Move, ...]]) -> Iterator[Tuple[int, int, Move]]:
    for p in range(len(code)):
        for ln in (1, 2, 3, 4):
            if p + ln > len(code):
                break
            for mv in table.get(code[p : p + ln], ()):
                yield p, ln, mv


def _inverse(step: ElementaryStep) -> ElementaryStep:
    back = "backward" if step.direction == "forward" else "forward"
    return ElementaryStep(step.rule, step.position, back, step.bindings)


# ------------------------------------------------------------------ regions
class Region:
    """Words reached from a root word, with delta offsets and parent links.

    ``nodes[w] = (d, parent, step)`` records root = w * d^d (as elements),
    reached from ``parent`` by ``step``.  With ``h_only`` the region uses
    H-moves only, so every path can be inverted.
    """

    def __init__(self, root: str, n: int, h_only: bool, budget: int = DEFAULT_BUDGET):
        self.n = n
        self.root = root
        self.h_only = h_only
        self.budget = budget
        self.nodes: Dict[str, Tuple[int, Optional[str], Optional[ElementaryStep]]] = {
            root: (0, None, None)
        }
        self.front: List[str] = [root]  # current lowest class
        self.maxlen = len(root)
        ms = _moves(n)
        self._same = ms.same
        self._down = ms.h_down if h_only else ms.down
        self._up = ms.up

    def _add(self, w: str, parent: str, p: int, mv: Move) -> bool:
        if w in self.nodes:
            return False
        d0 = self.nodes[parent][0]
        # parent*d^d0 = root and parent = w*d^mv.delta
        self.nodes[w] = (d0 + mv.delta, parent, ElementaryStep(mv.rule, p, mv.direction, mv.bindings))
        if len(self.nodes) > self.budget:
            raise BudgetExhausted(f"region grew past {self.budget} words")
        return True

    def descend(self) -> None:
        """Greedy descent: class BFS, taking the first lowering move found."""
        start = self.front[0]
        while True:
            cls = [start]
            seen = {start}
            q = deque(cls)
            nxt = None
            while q and nxt is None:
                w = q.popleft()
                for p, ln, mv in _hits(w, self._down):
                    y = w[:p] + mv.rhs + w[p + ln :]
                    self._add(y, w, p, mv)
                    nxt = y
                    break
                if nxt is not None:
                    break
                for p, ln, mv in _hits(w, self._same):
                    y = w[:p] + mv.rhs + w[p + ln :]
                    if y not in seen:
                        seen.add(y)
                        self._add(y, w, p, mv)
                        cls.append(y)
                        q.append(y)
            if nxt is None:
                self.front = cls
                self.maxlen = len(start)
                return
            start = nxt

    def widen(self, maxlen: int) -> None:
        """All words reachable from the lowest class within a length bound."""
        tables = (self._same, self._down, self._up)
        q = deque(self.front)
        seen = set(self.front)
        while q:
            w = q.popleft()
            for tab in tables:
                for p, ln, mv in _hits(w, tab):
                    y = w[:p] + mv.rhs + w[p + ln :]
                    if len(y) > maxlen or y in seen:
                        continue
                    seen.add(y)
                    self._add(y, w, p, mv)
                    q.append(y)
        self.maxlen = maxlen

    def path(self, w: str) -> List[ElementaryStep]:
        """Steps from the root to ``w``."""
        out = []
        while True:
            _, parent, step = self.nodes[w]
            if parent is None:
                break
            out.append(step)
            w = parent
        return out[::-1]

    def delta(self, w: str) -> int:
        return self.nodes[w][0]


# ---------------------------------------------------------------- templates
class TemplateMemo:
    """H-only regions of key templates, shared across searches at one n.

    A region depends only on its key, so sharing is safe; ``index`` maps a
    visited word to the key whose region holds it.
    """

    def __init__(self, n: int, budget: int = DEFAULT_BUDGET):
        self.n = n
        self.budget = budget
        self.regions: Dict[Key, Region] = {}
        self.index: Dict[str, Key] = {}

    def region(self, key: Key) -> Region:
        reg = self.regions.get(key)
        if reg is None:
            reg = Region(key_code(key)[0], self.n, True, self.budget)
            reg.descend()
            self.regions[key] = reg
            self._index(key, reg)
        return reg

    def widen(self, key: Key, maxlen: int) -> None:
        reg = self.region(key)
        if reg.maxlen < maxlen:
            reg.widen(maxlen)
            self._index(key, reg)

    def _index(self, key: Key, reg: Region) -> None:
        for w in reg.nodes:
            old = self.index.setdefault(w, key)
            if old != key:
                raise Inconsistent(f"keys {old} and {key} share a word")


_MEMOS: Dict[int, TemplateMemo] = {}


def _memo(n: int) -> TemplateMemo:
    if n not in _MEMOS:
        _MEMOS[n] = TemplateMemo(n)
    return _MEMOS[n]


def candidate_keys(n: int, code: str) -> List[Key]:
    """Keys whose label, top and bottom match the word's action on the empty set."""
    adm = admissible(n)
    top = adm.eval_code(code, 0)
    bottom = adm.eval_code(code[::-1], 0)
    lab = adm.label_of(top)
    if adm.label_of(bottom) != lab:
        raise Inconsistent("top and bottom in different orbits")
    return [(lab, top, bottom, z) for z in cox_group(lab).elements()]


# --------------------------------------------------------------------- link
@dataclass(frozen=True)
class Link:
    """Outcome of a search: start word = template(key) * d^delta."""

    key: Key
    delta: int
    meet: str
    trace: Optional[Tuple[ElementaryStep, ...]]


def connect(
    code: str,
    candidates: Sequence[Key],
    n: int,
    budget: int = DEFAULT_BUDGET,
    want_trace: bool = False,
    memo: Optional[TemplateMemo] = None,
) -> Link:
    """Link ``code`` to one of ``candidates`` by a chain of rule steps.

    With ``want_trace`` the returned steps rewrite ``code`` into the
    template of the key exactly (H-steps on the template side are inverted).
    """
    memo = memo or _memo(n)
    cand = set(candidates)
    tmpl = {key_code(k)[0]: k for k in candidates}
    src = Region(code, n, False, budget)
    src.descend()

    def scan() -> Optional[Tuple[str, Key]]:
        for w in src.nodes:
            k = tmpl.get(w)
            if k is not None:
                memo.region(k)
                return w, k
        for w in src.nodes:
            k = memo.index.get(w)
            if k is not None and k in cand:
                return w, k
        return None

    hit = scan()
    if hit is None:
        for k in candidates:
            memo.region(k)
        hit = scan()
    slack = 0
    while hit is None:
        slack += 1
        if slack > MAX_SLACK:
            raise BudgetExhausted(f"no link within slack {MAX_SLACK}")
        src.widen(src.maxlen + 1)
        for k in candidates:
            reg = memo.region(k)
            memo.widen(k, max(reg.maxlen, src.maxlen))
        hit = scan()
    meet, key = hit
    tr = memo.region(key)
    delta = src.delta(meet) - tr.delta(meet)
    trace = None
    if want_trace:
        back = tr.path(meet)
        trace = tuple(src.path(meet)) + tuple(_inverse(s) for s in reversed(back))
    return Link(key, delta, meet, trace)


def connect_words(
    code: str, target: str, n: int, budget: int = DEFAULT_BUDGET
) -> Tuple[int, Tuple[ElementaryStep, ...]]:
    """Steps rewriting ``code`` into ``target``; returns (delta, steps).

    As elements, code = target * d^delta.  Raises BudgetExhausted when the
    two words are not linked within the slack limit.
    """
    src = Region(code, n, False, budget)
    dst = Region(target, n, True, budget)
    src.descend()
    dst.descend()
    for slack in range(MAX_SLACK + 1):
        if slack:
            src.widen(src.maxlen + 1)
            dst.widen(max(dst.maxlen, src.maxlen))
        meet = next((w for w in src.nodes if w in dst.nodes), None)
        if meet is not None:
            back = dst.path(meet)
            steps = tuple(src.path(meet)) + tuple(_inverse(s) for s in reversed(back))
            return src.delta(meet) - dst.delta(meet), steps
    raise BudgetExhausted(f"no link within slack {MAX_SLACK}")


def search_key(code: str, n: int, budget: int = DEFAULT_BUDGET, want_trace: bool = False) -> Link:
    return connect(code, candidate_keys(n, code), n, budget, want_trace)


def search_reduce(w: Word, n: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> NormalForm:
    """Normal form of ``w`` found by exhaustive search (the oracle)."""
    if n is None:
        n = max([4] + [i for _, i in w.symbols])
    link = search_key(w.code, n, budget)
    shift = key_code(link.key)[1]
    return nf_of(link.key, w.delta_exp + link.delta - shift)
