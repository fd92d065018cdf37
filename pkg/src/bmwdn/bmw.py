"""The BMW algebra B(D_n) by replaying Brauer traces under the BMW relations.

Every elementary Brauer step is lifted to its BMW relation: binomial rules
rewrite in place, scalar rules multiply the running coefficient by l or 1/l,
and the five non-binomial rules emit side words with strictly smaller
height.  Side words are reduced recursively, so the recursion terminates.
The basis element of a key K is word(K) with every r read as g.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .admissible import OrbitLabel, admissible, cox_group, labels_for, zstar_code
from .brauer import BrauerElement
from .coeffs import RElem, m_value, mu_specialize
from .normal_form import Key, all_keys, e_hat, identity_key, key_code, nf_of, nf_to_json, op_key, s_word
from .reducer import engine
from .words import RULE_BY_TAG, RULE_VARS, ElementaryStep, Word, code_height, rule_table, sym_code

__all__ = [
    "CheckFailed",
    "CorrectionRule",
    "CORRECTIONS",
    "BMWElement",
    "bmw_reduce",
    "bmw_reduce_code",
    "bmw_left_mul",
    "bmw_replay",
    "bmw_mul",
    "bmw_key",
    "g_inverse",
    "mu_map",
    "ideal_keys",
    "layer_of",
    "hecke_check",
    "filtration_check",
    "zhat_square_check",
]


class CheckFailed(RuntimeError):
    """A verification found a counterexample."""


# ------------------------------------------------------------ rule lifts
@dataclass(frozen=True)
class CorrectionRule:
    """lhs = scalar * rhs + sum(coeff * side word), read left to right.

    Side patterns use the rule's variables i, j, k; setting l = 1, m = 0
    kills them and leaves the Brauer rule.
    """

    tag: str
    scalar: RElem
    sides: Tuple[Tuple[str, RElem], ...]


def _rules() -> Dict[str, CorrectionRule]:
    m = m_value()
    one = RElem.from_int(1)
    l, li = RElem.l(1), RElem.l(-1)
    table = {tag: CorrectionRule(tag, one, ()) for tag in RULE_BY_TAG}
    table["RSrr"] = CorrectionRule("RSrr", one, (("ri", -m), ("ei", m * li)))
    table["RSer"] = CorrectionRule("RSer", li, ())
    table["RSre"] = CorrectionRule("RSre", li, ())
    table["RNere"] = CorrectionRule("RNere", l, ())
    table["HNrer"] = CorrectionRule(
        "HNrer",
        one,
        (
            ("ej ri", m),
            ("ei rj", -m),
            ("ri ej", m),
            ("rj ei", -m),
            ("ej", m * m),
            ("ei", -(m * m)),
        ),
    )
    table["HNree"] = CorrectionRule("HNree", one, (("ej", m), ("ei ej", -m)))
    table["HNeer"] = CorrectionRule("HNeer", one, (("ej", m), ("ej ei", -m)))
    table["RTerre"] = CorrectionRule("RTerre", one, (("ej ei rk ej", m), ("ej", -(m * l))))
    return table


CORRECTIONS: Dict[str, CorrectionRule] = _rules()


def _side_code(pattern: str, tag: str, bindings: Tuple[int, ...]) -> str:
    kind = RULE_BY_TAG[tag][4]
    env = dict(zip(RULE_VARS[kind], bindings))
    return "".join(sym_code(t[0], env[t[1]]) for t in pattern.split())


# -------------------------------------------------------------- elements
class BMWElement:
    """Finite R-combination of basis keys."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Key, RElem]] = None):
        self.n = n
        self.terms: Dict[Key, RElem] = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_key(cls, n: int, key: Key, coeff: Optional[RElem] = None) -> "BMWElement":
        return cls(n, {key: coeff if coeff is not None else RElem.from_int(1)})

    @classmethod
    def identity(cls, n: int) -> "BMWElement":
        return cls.from_key(n, identity_key(n))

    def __add__(self, other: "BMWElement") -> "BMWElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BMWElement(self.n, out)

    def __neg__(self) -> "BMWElement":
        return BMWElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BMWElement") -> "BMWElement":
        return self + (-other)

    def scale(self, c: RElem) -> "BMWElement":
        return BMWElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "BMWElement") -> "BMWElement":
        return bmw_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, BMWElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def op(self) -> "BMWElement":
        """Word reversal, extended linearly: each basis word is reversed and reduced."""
        ctx = _ctx(self.n)
        out: Dict[Key, RElem] = {}
        for k, c in self.terms.items():
            code, shift = key_code(k)
            cc = c * RElem.delta(shift)
            for k2, c2 in ctx.reduce_code(code[::-1]).items():
                _acc(out, k2, cc * c2)
        return BMWElement(self.n, out)

    def support(self) -> List[Key]:
        return list(self.terms)

    def to_json(self) -> List[dict]:
        return [
            {"key": nf_to_json(nf_of(k)), "coeff": c.render()}
            for k, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0]))
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.render()})*[{nf_of(k)}]" for k, c in self.terms.items())

    __repr__ = __str__


def _acc(out: Dict[Key, RElem], key: Key, c: RElem) -> None:
    if key in out:
        s = out[key] + c
        if s:
            out[key] = s
        else:
            del out[key]
    elif c:
        out[key] = c


# --------------------------------------------------------------- replay
class _BMW:
    """Per-n memo of generator-times-basis products."""

    def __init__(self, n: int):
        self.n = n
        self.eng = engine(n)
        self.table = rule_table(n)
        self.left: Dict[Tuple[str, Key], Dict[Key, RElem]] = {}
        self.words: Dict[str, Dict[Key, RElem]] = {}
        self.products: Dict[Tuple[Key, Key], Dict[Key, RElem]] = {}

    def left_mul(self, x: str, key: Key) -> Dict[Key, RElem]:
        """x * word(key) in the basis."""
        got = self.left.get((x, key))
        if got is not None:
            return got
        code, shift = key_code(key)
        new, _ = self.eng.left_mul_raw(x, key)
        out = self.replay(x + code, RElem.delta(shift), self.eng.left_mul_trace(x, key), new)
        self.left[(x, key)] = out
        return out

    def replay(
        self, cur: str, coeff: RElem, steps: Sequence[ElementaryStep], target: Key
    ) -> Dict[Key, RElem]:
        """coeff * cur in the basis, lifting a Brauer trace that ends at template(target)."""
        out: Dict[Key, RElem] = {}
        for st in steps:
            ln, mv = self.table.find(cur, st)
            p = st.position
            rule = CORRECTIONS[st.rule]
            if rule.sides:
                sign = 1 if st.direction == "forward" else -1
                for pat, c in rule.sides:
                    side = cur[:p] + _side_code(pat, st.rule, st.bindings) + cur[p + ln :]
                    cc = coeff * c if sign > 0 else -(coeff * c)
                    for k, v in self.reduce_code(side).items():
                        _acc(out, k, cc * v)
            if st.direction == "forward":
                coeff = coeff * rule.scalar
            coeff = coeff * RElem.delta(mv.delta)
            cur = cur[:p] + mv.rhs + cur[p + ln :]
        if cur != key_code(target)[0]:
            raise CheckFailed(f"trace ends at {cur!r}, not the template of {nf_of(target)}")
        _acc(out, target, coeff * RElem.delta(-key_code(target)[1]))
        return out

    def reduce_code(self, code: str) -> Dict[Key, RElem]:
        """The word ``code`` (r read as g) in the basis."""
        got = self.words.get(code)
        if got is not None:
            return got
        if not code:
            got = {identity_key(self.n): RElem.from_int(1)}
        else:
            rest = self.reduce_code(code[1:])
            got = {}
            for k, c in rest.items():
                for k2, c2 in self.left_mul(code[0], k).items():
                    _acc(got, k2, c * c2)
        if len(code) <= 24:
            self.words[code] = got
        return got

    def key_product(self, a: Key, b: Key) -> Dict[Key, RElem]:
        """word(a) * word(b) in the basis."""
        got = self.products.get((a, b))
        if got is not None:
            return got
        code, shift = key_code(a)
        cur: Dict[Key, RElem] = {b: RElem.delta(shift)}
        for x in reversed(code):
            nxt: Dict[Key, RElem] = {}
            for k, c in cur.items():
                for k2, c2 in self.left_mul(x, k).items():
                    _acc(nxt, k2, c * c2)
            cur = nxt
        self.products[(a, b)] = cur
        return cur


_CTX: Dict[int, _BMW] = {}


def _ctx(n: int) -> _BMW:
    if n not in _CTX:
        _CTX[n] = _BMW(n)
    return _CTX[n]


def _n_of(w: Word, n: Optional[int]) -> int:
    return n if n is not None else max([4] + [i for _, i in w.symbols])


def bmw_reduce_code(code: str, n: int) -> BMWElement:
    return BMWElement(n, _ctx(n).reduce_code(code))


def bmw_reduce(w: Word, n: Optional[int] = None) -> BMWElement:
    """The BMW image of w (r read as g, times d^delta_exp) in the basis."""
    n = _n_of(w, n)
    return bmw_reduce_code(w.code, n).scale(RElem.delta(w.delta_exp))


def bmw_replay(code: str, steps: Sequence[ElementaryStep], target: Key, n: int) -> BMWElement:
    """The word ``code`` lifted along an explicit Brauer trace ending at ``target``."""
    return BMWElement(n, _ctx(n).replay(code, RElem.from_int(1), steps, target))


def bmw_left_mul(x: str, key: Key, n: int) -> BMWElement:
    return BMWElement(n, _ctx(n).left_mul(x, key))


def bmw_key(n: int, key: Key) -> BMWElement:
    return BMWElement.from_key(n, key)


def bmw_mul(a: BMWElement, b: BMWElement) -> BMWElement:
    if a.n != b.n:
        raise ValueError("elements over different n")
    ctx = _ctx(a.n)
    out: Dict[Key, RElem] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            cab = ca * cb
            for k, c in ctx.key_product(ka, kb).items():
                _acc(out, k, cab * c)
    return BMWElement(a.n, out)


def g_inverse(i: int, n: int) -> BMWElement:
    """g_i^-1 = g_i + m - m e_i."""
    m = m_value()
    g = bmw_reduce_code(sym_code("r", i), n)
    e = bmw_reduce_code(sym_code("e", i), n)
    return g + BMWElement.identity(n).scale(m) - e.scale(m)


def mu_map(a: BMWElement) -> BrauerElement:
    """Specialize l -> 1 (so m -> 0) coefficientwise."""
    return BrauerElement(a.n, {k: mu_specialize(c) for k, c in a.terms.items()})


# ------------------------------------------------------------ filtration
def layer_of(label: OrbitLabel) -> float:
    """Position in the ideal chain: t for Y(t) and Y'(n/2), infinity for Y*."""
    if label.kind == "Y*":
        return float("inf")
    return float(label.t)


def ideal_keys(label: OrbitLabel):
    """Predicate for keys of the ideal strictly below the Hecke layer of ``label``.

    For Y(t) and Y'(n/2): Theta' (every Y* key), e_Y(t') for t' > t, and
    Y'(n/2) when n > 2t.  For Y*(t): the deeper Y*(t') with t' > t.
    """
    n, t = label.n, label.t

    def inside(key: Key) -> bool:
        lab = key[0]
        if label.kind == "Y*":
            return lab.kind == "Y*" and lab.t > t
        if lab.kind == "Y*":
            return True
        if lab.kind == "Y":
            return lab.t > t
        return n > 2 * t  # Y'(n/2)

    return inside


def _s_hat(label: OrbitLabel, i: int) -> BMWElement:
    return bmw_reduce(s_word(label, i), label.n)


def hecke_check(n: int, label: OrbitLabel, words_per_element: int = 2, sample: Optional[int] = None, seed: int = 0) -> dict:
    """Braid relations, quadratic defects and reduced-word independence for one label."""
    G = cox_group(label)
    gens = sorted(label.gen_words())
    shat = {i: _s_hat(label, i) for i in gens}
    e_y = bmw_reduce(e_hat(label), n)
    inside = ideal_keys(label)
    m = m_value()
    report = {"n": n, "label": str(label), "generators": gens, "braid": [], "quadratic": [], "words": 0}
    for a in gens:
        for b in gens:
            if a >= b:
                continue
            if G.commute(a, b):
                lhs, rhs = shat[a] * shat[b], shat[b] * shat[a]
            else:
                lhs = shat[a] * shat[b] * shat[a]
                rhs = shat[b] * shat[a] * shat[b]
            if lhs != rhs:
                raise CheckFailed(f"{label}: braid relation fails for s{a}, s{b}")
            report["braid"].append([a, b])
    for a in gens:
        defect = shat[a] * shat[a] + shat[a].scale(m) - e_y
        bad = [k for k in defect.terms if not inside(k)]
        if bad:
            raise CheckFailed(f"{label}: quadratic defect of s{a} leaves the ideal at {nf_of(bad[0])}")
        report["quadratic"].append({"s": a, "support": len(defect.terms)})
    # products along two reduced words of the same element agree
    rng = random.Random(seed)
    elems = G.elements()
    if sample is not None and sample < len(elems):
        elems = rng.sample(elems, sample)
    for w in elems:
        word = G.canonical_word(w)
        alt = _other_reduced_word(G, word, rng)
        if alt is None:
            continue
        p1 = _product(shat, word, e_y)
        p2 = _product(shat, alt, e_y)
        if p1 != p2:
            raise CheckFailed(f"{label}: reduced words {word} and {alt} give different products")
        report["words"] += 1
    report["pass"] = True
    return report


def _product(shat: Dict[int, BMWElement], word: Sequence[int], e_y: BMWElement) -> BMWElement:
    out = e_y
    for g in word:
        out = out * shat[g]
    return out


def _other_reduced_word(G, word: Sequence[int], rng: random.Random) -> Optional[Tuple[int, ...]]:
    """A different reduced word of the same element, by one random braid move."""
    w = list(word)
    spots = []
    for p in range(len(w) - 1):
        a, b = w[p], w[p + 1]
        if a != b and G.commute(a, b):
            spots.append((p, 2))
        if p + 2 < len(w) and w[p + 2] == a and a != b and not G.commute(a, b):
            spots.append((p, 3))
    if not spots:
        return None
    p, ln = rng.choice(spots)
    if ln == 2:
        w[p], w[p + 1] = w[p + 1], w[p]
    else:
        a, b = w[p], w[p + 1]
        w[p : p + 3] = [b, a, b]
    return tuple(w)


def filtration_check(n: int, keys: Optional[Iterable[Key]] = None) -> dict:
    """Layer containment under generator products and opposition symmetry."""
    ctx = _ctx(n)
    eng = engine(n)
    keys = list(keys) if keys is not None else all_keys(n)
    gens = [sym_code("r", i) for i in range(1, n + 1)] + [sym_code("e", i) for i in range(1, n + 1)]
    checked = 0
    for key in keys:
        lay = layer_of(key[0])
        for x in gens:
            for k in ctx.left_mul(x, key):
                if layer_of(k[0]) < lay:
                    raise CheckFailed(f"{x} * {nf_of(key)} leaves layer {lay} at {nf_of(k)}")
            # right products through opposition of the left product table
            for k in ctx.left_mul(x, op_key(key)):
                if layer_of(k[0]) < lay:
                    raise CheckFailed(f"{nf_of(key)} * {x} leaves layer {lay}")
            checked += 2
        ok = op_key(key)
        if (ok[0], ok[1], ok[2]) != (key[0], key[2], key[1]):
            raise CheckFailed(f"op of {nf_of(key)} is not (label, bottom, top)")
        if cox_group(key[0]).inv(key[3]) != ok[3]:
            raise CheckFailed(f"op of {nf_of(key)} does not invert z")
        code, shift = key_code(key)
        back, d = eng.reduce_code(code[::-1])
        if back != ok or d != -shift:
            raise CheckFailed(f"reversed word of {nf_of(key)} reduces to {nf_of(back)}")
    return {"n": n, "keys": len(keys), "products": checked, "pass": True}


def zhat_square_check(n: int) -> dict:
    """(z^*)^2 - d e_n + m d z^* has support on Y* keys only."""
    z = bmw_reduce_code(zstar_code(n), n)
    en = bmw_reduce_code(sym_code("e", n), n)
    d = RElem.delta()
    rest = bmw_reduce_code(zstar_code(n) * 2, n) - en.scale(d) + z.scale(m_value() * d)
    bad = [str(nf_of(k)) for k in rest.terms if k[0].kind != "Y*"]
    return {
        "n": n,
        "remainder_terms": len(rest.terms),
        "outside": bad,
        "pass": not bad,
    }
