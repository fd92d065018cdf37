"""Words in the free monoid on r_i, e_i with a central delta, and the
eighteen Brauer rewrite rules.

Internally a word is a string: r_i is ``chr(64 + i)`` ("A" = r1) and e_i is
``chr(96 + i)`` ("a" = e1).  The public :class:`Word` keeps tagged symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .roots import root_system

__all__ = [
    "Word",
    "ElementaryStep",
    "NoMatch",
    "ParseError",
    "RULES",
    "parse_word",
    "word_height",
    "enumerate_steps",
    "apply_step",
    "eval_action",
    "rule_table",
]


class NoMatch(ValueError):
    """A step does not match the word at the stated position."""


class ParseError(ValueError):
    """Bad token or index in a word."""


def sym_code(kind: str, i: int) -> str:
    return chr(64 + i) if kind == "r" else chr(96 + i)


def code_sym(c: str) -> Tuple[str, int]:
    o = ord(c)
    return ("r", o - 64) if o < 96 else ("e", o - 96)


def is_r(c: str) -> bool:
    return c < "a"


def idx(c: str) -> int:
    o = ord(c)
    return o - 64 if o < 96 else o - 96


def code_height(code: str) -> int:
    return sum(1 for c in code if c < "a")


def code_str(code: str, delta: int = 0) -> str:
    toks = [f"{k}{i}" for k, i in map(code_sym, code)]
    if delta:
        toks.append(f"d^{delta}")
    return " ".join(toks) if toks else "1"


def op_code(code: str) -> str:
    return code[::-1]


@dataclass(frozen=True)
class Word:
    """A word: tagged symbols plus a delta exponent."""

    symbols: Tuple[Tuple[str, int], ...]
    delta_exp: int = 0

    @classmethod
    def from_code(cls, code: str, delta: int = 0) -> "Word":
        return cls(tuple(code_sym(c) for c in code), delta)

    @property
    def code(self) -> str:
        return "".join(sym_code(k, i) for k, i in self.symbols)

    @property
    def height(self) -> int:
        return sum(1 for k, _ in self.symbols if k == "r")

    def __len__(self) -> int:
        return len(self.symbols)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols, self.delta_exp + other.delta_exp)

    def op(self) -> "Word":
        return Word(self.symbols[::-1], self.delta_exp)

    def __str__(self) -> str:
        return code_str(self.code, self.delta_exp)


def word_height(w: Word) -> int:
    return w.height


_TOKEN = re.compile(r"([re])(\d+)|d\^(-?\d+)|d")


def parse_word(text: str, n: Optional[int] = None) -> Word:
    """Parse ``r<i> e<i> ... [d^<k>]``; ``1`` or empty is the identity."""
    syms: List[Tuple[str, int]] = []
    delta = 0
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ParseError(f"bad token {tok!r}")
        if m.group(1):
            i = int(m.group(2))
            if i < 1 or (n is not None and i > n):
                raise ParseError(f"index {i} outside 1..{n}")
            syms.append((m.group(1), i))
        elif m.group(3) is not None:
            delta += int(m.group(3))
        else:
            delta += 1
    return Word(tuple(syms), delta)


# ---------------------------------------------------------------------------
# rules
#
# Each rule is (tag, lhs, rhs, delta, kind) with patterns over variables
# i, j, k.  kind: "same" (one index), "far" (i !~ j), "near" (i ~ j),
# "path" (i ~ j ~ k).  delta is the exponent gained going left to right.

RULES: Tuple[Tuple[str, str, str, int, str], ...] = (
    ("RSrr", "ri ri", "", 0, "same"),
    ("RSer", "ei ri", "ei", 0, "same"),
    ("RSre", "ri ei", "ei", 0, "same"),
    ("HSee", "ei ei", "ei", 1, "same"),
    ("HCrr", "ri rj", "rj ri", 0, "far"),
    ("HCer", "ei rj", "rj ei", 0, "far"),
    ("HCee", "ei ej", "ej ei", 0, "far"),
    ("HNrrr", "ri rj ri", "rj ri rj", 0, "near"),
    ("HNrer", "rj ei rj", "ri ej ri", 0, "near"),
    ("RNrre", "rj ri ej", "ei ej", 0, "near"),
    ("RNerr", "ei rj ri", "ei ej", 0, "near"),
    ("HNree", "rj ei ej", "ri ej", 0, "near"),
    ("RNere", "ei rj ei", "ei", 0, "near"),
    ("HNeer", "ej ei rj", "ej ri", 0, "near"),
    ("HNeee", "ei ej ei", "ei", 0, "near"),
    ("HTeere", "ej ei rk ej", "ej ri ek ej", 0, "path"),
    ("RTerre", "ej ri rk ej", "ej ei ek ej", 0, "path"),
)
RULE_TAGS = tuple(r[0] for r in RULES)
RULE_BY_TAG = {r[0]: r for r in RULES}
RULE_VARS = {"same": "i", "far": "ij", "near": "ij", "path": "ijk"}


@dataclass(frozen=True)
class ElementaryStep:
    """One application of a rule at a symbol position."""

    rule: str
    position: int
    direction: str  # "forward" | "backward"
    bindings: Tuple[int, ...]

    def __str__(self) -> str:
        b = ",".join(map(str, self.bindings))
        arrow = ">" if self.direction == "forward" else "<"
        return f"{self.rule}{arrow}@{self.position}[{b}]"


def _instantiate(pattern: str, env: Dict[str, int]) -> str:
    return "".join(sym_code(t[0], env[t[1]]) for t in pattern.split())


def _bindings(n: int, kind: str) -> Iterable[Dict[str, int]]:
    rs = root_system(n)
    nodes = rs.nodes
    if kind == "same":
        for i in nodes:
            yield {"i": i}
    elif kind == "far":
        for i in nodes:
            for j in nodes:
                if i != j and not rs.adjacent(i, j):
                    yield {"i": i, "j": j}
    elif kind == "near":
        for i in nodes:
            for j in rs.adj[i]:
                yield {"i": i, "j": j}
    else:
        for j in nodes:
            for i in rs.adj[j]:
                for k in rs.adj[j]:
                    if i != k:
                        yield {"i": i, "j": j, "k": k}


@dataclass(frozen=True)
class Move:
    """A table entry: replace a matched factor by ``rhs``."""

    rule: str
    direction: str
    bindings: Tuple[int, ...]
    rhs: str
    delta: int


class RuleTable:
    """Factor -> moves lookup for all rule instances at a given n."""

    def __init__(self, n: int):
        self.n = n
        self.by_lhs: Dict[str, List[Move]] = {}
        self.maxlen = 4
        for tag, lhs, rhs, delta, kind in RULES:
            for env in _bindings(n, kind):
                b = tuple(env[v] for v in RULE_VARS[kind])
                lw, rw = _instantiate(lhs, env), _instantiate(rhs, env)
                self._add(lw, Move(tag, "forward", b, rw, delta))
                if tag.startswith("H"):
                    self._add(rw, Move(tag, "backward", b, lw, -delta))
        for key in self.by_lhs:
            self.by_lhs[key].sort(key=lambda m: (RULE_TAGS.index(m.rule), m.direction, m.bindings))

    def _add(self, lhs: str, mv: Move) -> None:
        self.by_lhs.setdefault(lhs, []).append(mv)

    def moves_at(self, code: str, pos: int):
        for ln in range(1, self.maxlen + 1):
            if pos + ln > len(code):
                break
            for mv in self.by_lhs.get(code[pos : pos + ln], ()):
                yield ln, mv

    def neighbors(self, code: str):
        """All (pos, length, move, new_code) one step away."""
        for pos in range(len(code)):
            for ln, mv in self.moves_at(code, pos):
                yield pos, ln, mv, code[:pos] + mv.rhs + code[pos + ln :]

    def find(self, code: str, step: ElementaryStep) -> Tuple[int, Move]:
        for ln, mv in self.moves_at(code, step.position):
            if mv.rule == step.rule and mv.direction == step.direction and mv.bindings == step.bindings:
                return ln, mv
        raise NoMatch(f"{step} does not match {code_str(code)!r}")

    def apply(self, code: str, step: ElementaryStep) -> Tuple[str, int]:
        ln, mv = self.find(code, step)
        p = step.position
        return code[:p] + mv.rhs + code[p + ln :], mv.delta


@lru_cache(maxsize=None)
def rule_table(n: int) -> RuleTable:
    return RuleTable(n)


def _infer_n(w: Word, n: Optional[int]) -> int:
    if n is not None:
        return n
    return max([4] + [i for _, i in w.symbols])


def enumerate_steps(w: Word, n: Optional[int] = None) -> List[Tuple[ElementaryStep, Word]]:
    """Every single rule application (H both ways, R forward)."""
    n = _infer_n(w, n)
    table = rule_table(n)
    out = []
    for pos, _ln, mv, new in table.neighbors(w.code):
        st = ElementaryStep(mv.rule, pos, mv.direction, mv.bindings)
        out.append((st, Word.from_code(new, w.delta_exp + mv.delta)))
    return out


def apply_step(w: Word, step: ElementaryStep, n: Optional[int] = None) -> Word:
    n = _infer_n(w, n)
    new, dd = rule_table(n).apply(w.code, step)
    return Word.from_code(new, w.delta_exp + dd)


def replay(code: str, delta: int, steps: Sequence[ElementaryStep], n: int) -> Tuple[str, int]:
    """Apply a step sequence to a coded word."""
    table = rule_table(n)
    for st in steps:
        code, dd = table.apply(code, st)
        delta += dd
    return code, delta


# opposition on steps: reversing a word maps each rule instance to the
# instance of the mirrored rule at the mirrored position
_OP_RULE = {
    "RSrr": ("RSrr", lambda b: b),
    "RSer": ("RSre", lambda b: b),
    "RSre": ("RSer", lambda b: b),
    "HSee": ("HSee", lambda b: b),
    "HCrr": ("HCrr", lambda b: (b[1], b[0])),
    "HCer": ("HCer", lambda b: (b[1], b[0])),  # flips direction too
    "HCee": ("HCee", lambda b: (b[1], b[0])),
    "HNrrr": ("HNrrr", lambda b: b),
    "HNrer": ("HNrer", lambda b: b),
    "RNrre": ("RNerr", lambda b: (b[1], b[0])),
    "RNerr": ("RNrre", lambda b: (b[1], b[0])),
    "HNree": ("HNeer", lambda b: (b[1], b[0])),
    "HNeer": ("HNree", lambda b: (b[1], b[0])),
    "RNere": ("RNere", lambda b: b),
    "HNeee": ("HNeee", lambda b: b),
    "HTeere": ("HTeere", lambda b: b),
    "RTerre": ("RTerre", lambda b: (b[2], b[1], b[0])),
}


def op_step(code: str, step: ElementaryStep, n: int) -> ElementaryStep:
    """The step on ``code[::-1]`` mirroring ``step`` on ``code``."""
    ln, mv = rule_table(n).find(code, step)
    lhs = code[step.position : step.position + ln][::-1]
    rhs = mv.rhs[::-1]
    pos = len(code) - step.position - ln
    for ln2, mv2 in rule_table(n).moves_at(code[::-1], pos):
        if ln2 == ln and mv2.rhs == rhs and mv2.delta == mv.delta and code[::-1][pos : pos + ln] == lhs:
            tag, f = _OP_RULE[step.rule]
            if mv2.rule == tag:
                return ElementaryStep(mv2.rule, pos, mv2.direction, mv2.bindings)
    for ln2, mv2 in rule_table(n).moves_at(code[::-1], pos):
        if ln2 == ln and mv2.rhs == rhs and mv2.delta == mv.delta:
            return ElementaryStep(mv2.rule, pos, mv2.direction, mv2.bindings)
    raise NoMatch(f"no mirror of {step}")


def op_trace(code: str, steps: Sequence[ElementaryStep], n: int) -> List[ElementaryStep]:
    """Mirror a whole trace that starts at ``code``."""
    out = []
    table = rule_table(n)
    for st in steps:
        out.append(op_step(code, st, n))
        code, _ = table.apply(code, st)
    return out


def invert_trace(code: str, steps: Sequence[ElementaryStep], n: int) -> List[ElementaryStep]:
    """Reverse a trace of homogeneous steps (ending word back to ``code``)."""
    table = rule_table(n)
    codes = [code]
    for st in steps:
        if st.rule.startswith("R"):
            raise ValueError("strict steps cannot be inverted")
        codes.append(table.apply(codes[-1], st)[0])
    out = []
    for k in range(len(steps) - 1, -1, -1):
        st = steps[k]
        src, dst = codes[k + 1], codes[k]
        ln, mv = table.find(codes[k], st)
        new_len = len(mv.rhs)
        for ln2, mv2 in table.moves_at(src, st.position):
            if ln2 == new_len and src[: st.position] + mv2.rhs + src[st.position + ln2 :] == dst and mv2.delta == -mv.delta:
                if mv2.rule == st.rule:
                    out.append(ElementaryStep(mv2.rule, st.position, mv2.direction, mv2.bindings))
                    break
        else:
            raise NoMatch(f"cannot invert {st}")
    return out


def shift_trace(steps: Sequence[ElementaryStep], offset: int) -> List[ElementaryStep]:
    return [ElementaryStep(s.rule, s.position + offset, s.direction, s.bindings) for s in steps]


def eval_action(w: Word, B, n: Optional[int] = None):
    """Action of a word on an admissible set, rightmost symbol first."""
    from .admissible import AdmissibleSet, admissible

    n = B.n if isinstance(B, AdmissibleSet) else _infer_n(w, n)
    adm = admissible(n)
    mask = B.mask if isinstance(B, AdmissibleSet) else adm.mask_of(B)
    return AdmissibleSet(n, adm.eval_code(w.code, mask))
