"""Normal forms (Y, B, B', z, k) and their canonical words.

The canonical word of a key (Y, B, B', z) is

    a_B e_Y  c(g_1) e_Y  ...  c(g_m) e_Y  op(a_B')

where g_1 ... g_m is the ShortLex-minimal reduced word of z and c(g) is the
core of the generator s_g (s_g = c(g) e^_Y d^extra(g)).  The key denotes
that word times d^(sum_g (extra(g) - |Y|)), so that s_g-products compose
without stray powers of d; a NormalForm adds the exponent k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .admissible import AdmissibleSet, OrbitLabel, admissible, cox_group, labels_for
from .coxeter import CoxeterGroup
from .words import Word, code_str, parse_word

__all__ = [
    "LabelMismatch",
    "CoxElem",
    "NormalForm",
    "Key",
    "s_word",
    "cox_mul",
    "cox_inv",
    "cox_identity",
    "key_code",
    "key_of",
    "nf_of",
    "nf_to_word",
    "nf_to_json",
    "nf_from_json",
    "parse_label",
    "all_keys",
    "identity_key",
]

# key = (label, top mask, bottom mask, group element of W(M_Y))
Key = Tuple[OrbitLabel, int, int, Tuple[int, ...]]


class LabelMismatch(ValueError):
    """Coxeter elements from different orbit labels."""


@dataclass(frozen=True)
class CoxElem:
    label: OrbitLabel
    word: Tuple[int, ...]

    @property
    def group(self) -> CoxeterGroup:
        return cox_group(self.label)

    @property
    def elem(self) -> Tuple[int, ...]:
        return self.group.from_word(self.word)

    @classmethod
    def from_elem(cls, label: OrbitLabel, elem: Tuple[int, ...]) -> "CoxElem":
        return cls(label, cox_group(label).canonical_word(elem))

    def __str__(self) -> str:
        return " ".join(f"s{g}" for g in self.word) if self.word else "1"


def cox_identity(label: OrbitLabel) -> CoxElem:
    return CoxElem(label, ())


def cox_mul(a: CoxElem, b: CoxElem) -> CoxElem:
    if a.label != b.label:
        raise LabelMismatch(f"{a.label} vs {b.label}")
    G = a.group
    return CoxElem.from_elem(a.label, G.mul(a.elem, b.elem))


def cox_inv(a: CoxElem) -> CoxElem:
    G = a.group
    return CoxElem.from_elem(a.label, G.inv(a.elem))


def s_word(label: OrbitLabel, i: int) -> Word:
    """The word s_i = c(i) e^_Y d^extra(i), with e^_Y = e_Y d^-|Y|."""
    gens = label.gen_words()
    if i not in gens:
        raise KeyError(f"{label} has no generator {i}")
    core, extra = gens[i]
    return Word.from_code(core + label.e_code, extra - len(label.nodes))


def e_hat(label: OrbitLabel) -> Word:
    return Word.from_code(label.e_code, -len(label.nodes))


@dataclass(frozen=True)
class NormalForm:
    label: OrbitLabel
    top: AdmissibleSet
    bottom: AdmissibleSet
    z: CoxElem
    delta_exp: int = 0

    @property
    def n(self) -> int:
        return self.label.n

    @property
    def key(self) -> Key:
        return (self.label, self.top.mask, self.bottom.mask, self.z.elem)

    def op(self) -> "NormalForm":
        return NormalForm(self.label, self.bottom, self.top, cox_inv(self.z), self.delta_exp)

    def __str__(self) -> str:
        return (
            f"{self.label} top={self.top} bottom={self.bottom} z={self.z} d^{self.delta_exp}"
        )


def nf_of(key: Key, delta: int = 0) -> NormalForm:
    lab, b, b2, z = key
    n = lab.n
    return NormalForm(
        lab, AdmissibleSet(n, b), AdmissibleSet(n, b2), CoxElem.from_elem(lab, z), delta
    )


def key_of(nf: NormalForm) -> Key:
    return nf.key


@lru_cache(maxsize=None)
def _key_code_cached(key: Key) -> Tuple[str, int]:
    lab, b, b2, z = key
    adm = admissible(lab.n)
    e = lab.e_code
    gens = lab.gen_words()
    parts = [adm.a_code[b], e]
    shift = 0
    for g in cox_group(lab).canonical_word(z):
        core, extra = gens[g]
        parts += [core, e]
        shift += extra - len(lab.nodes)
    parts.append(adm.a_code[b2][::-1])
    return "".join(parts), shift


def key_code(key: Key) -> Tuple[str, int]:
    """Canonical coded word of a key and its delta exponent."""
    return _key_code_cached(key)


def nf_to_word(nf: NormalForm) -> Word:
    code, shift = key_code(nf.key)
    return Word.from_code(code, shift + nf.delta_exp)


def identity_key(n: int) -> Key:
    lab = labels_for(n)[0]
    return (lab, 0, 0, cox_group(lab).identity)


def all_keys(n: int, labels: Optional[Sequence[OrbitLabel]] = None) -> List[Key]:
    adm = admissible(n)
    out = []
    for o in adm.orbits:
        if labels is not None and o.label not in labels:
            continue
        G = cox_group(o.label)
        elems = G.elements()
        for b in o.members:
            for b2 in o.members:
                for z in elems:
                    out.append((o.label, b, b2, z))
    return out


def op_key(key: Key) -> Key:
    lab, b, b2, z = key
    return (lab, b2, b, cox_group(lab).inv(z))


def parse_label(text: str, n: int) -> OrbitLabel:
    for lab in labels_for(n):
        if str(lab) == text.strip():
            return lab
    raise ValueError(f"no label {text!r} at n={n}")


def nf_to_json(nf: NormalForm) -> dict:
    return {
        "n": nf.n,
        "label": str(nf.label),
        "top": nf.top.names(),
        "bottom": nf.bottom.names(),
        "z": " ".join(f"s{g}" for g in nf.z.word),
        "delta": nf.delta_exp,
    }


def nf_from_json(doc) -> NormalForm:
    if isinstance(doc, str):
        doc = json.loads(doc)
    n = int(doc["n"])
    lab = parse_label(doc["label"], n)
    adm = admissible(n)
    top = AdmissibleSet(n, adm.mask_of(doc["top"]))
    bottom = AdmissibleSet(n, adm.mask_of(doc["bottom"]))
    zw = tuple(int(t[1:]) for t in doc["z"].split())
    z = CoxElem.from_elem(lab, cox_group(lab).from_word(zw))
    return NormalForm(lab, top, bottom, z, int(doc["delta"]))
