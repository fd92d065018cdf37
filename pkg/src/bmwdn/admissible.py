"""Admissible root sets, the monoid action, W-orbits, heights and A-words.

Sets are bitmasks over positive-root indices of :mod:`roots`.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coxeter import Block, CoxeterGroup, group_order
from .roots import Root, root_system
from .words import Word, code_sym, is_r, idx, sym_code

__all__ = [
    "NotOrthogonal",
    "AdmissibleSet",
    "OrbitLabel",
    "Orbit",
    "Admissible",
    "admissible",
    "closure",
    "act_r",
    "act_e",
    "orbit_of",
    "set_height",
    "a_B_word",
    "rank_formula",
]

CACHE_VERSION = "orbits-1"


class NotOrthogonal(ValueError):
    """Input roots are not mutually orthogonal."""


@dataclass(frozen=True)
class AdmissibleSet:
    n: int
    mask: int

    @property
    def roots(self) -> Tuple[Root, ...]:
        rs = root_system(self.n)
        return tuple(rs.roots[k] for k in _bits(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def names(self) -> List[str]:
        rs = root_system(self.n)
        return [rs.root_str(k) for k in _bits(self.mask)]

    def __str__(self) -> str:
        return "{" + ", ".join(self.names()) + "}"


def _bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


@dataclass(frozen=True)
class OrbitLabel:
    """Orbit label: kind is "Y", "Y*" or "Y'"."""

    kind: str
    t: int
    n: int

    def __str__(self) -> str:
        return f"{self.kind}({self.t})"

    @property
    def nodes(self) -> Tuple[int, ...]:
        """The coclique Y, in the order used for e_Y."""
        n, t = self.n, self.t
        if self.kind == "Y":
            return tuple(n - 2 * s for s in range(t))
        if self.kind == "Y*":
            return tuple(n - 2 * s for s in range(t - 1)) + (1, 2)
        return (1,) + tuple(range(4, n + 1, 2))

    @property
    def e_code(self) -> str:
        return "".join(sym_code("e", y) for y in self.nodes)

    def gen_words(self) -> Dict[int, Tuple[str, int]]:
        """Generator index -> (core word, extra delta exponent)."""
        n, t = self.n, self.t
        if self.kind == "Y*":
            return {i: (sym_code("r", i + 3), 0) for i in range(1, n - 2 * t)}
        if self.kind == "Y'":
            return {1: (sym_code("r", 2), 0)}
        if t == 0:
            return {i: (sym_code("r", i), 0) for i in range(1, n + 1)}
        k = n - 2 * t
        if k == 0:
            return {1: (sym_code("r", 1), 0)}
        out = {0: (zstar_code(n), -1)}
        if k >= 2:
            for i in range(1, k + 1):
                out[i] = (sym_code("r", i), 0)
        return out

    @property
    def blocks(self) -> Tuple[Block, ...]:
        n, t = self.n, self.t
        if self.kind == "Y*":
            k = n - 2 * t - 1
            return (Block("A", k, tuple(range(1, k + 1))),) if k >= 1 else ()
        if self.kind == "Y'":
            return (Block("A", 1, (1,)),)
        if t == 0:
            return (Block("D", n, tuple(range(1, n + 1))),)
        k = n - 2 * t
        if k == 0:
            return (Block("A", 1, (1,)),)
        out = [Block("A", 1, (0,))]
        if k >= 2:
            out.append(Block("D", k, tuple(range(1, k + 1))))
        return tuple(out)

    @property
    def components(self) -> List[str]:
        out = []
        for b in self.blocks:
            if b.kind == "D" and b.rank == 2:
                out += ["A1", "A1"]
            elif b.kind == "D" and b.rank == 3:
                out.append("A3")
            else:
                out.append(b.tag)
        return out

    @property
    def group_order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= group_order(b.kind, b.rank)
        return out

    @property
    def layer(self) -> Tuple[int, int]:
        """Position in the ideal filtration: (0, t) for Y/Y', (1, t) for Y*."""
        return (1, self.t) if self.kind == "Y*" else (0, self.t)


def zstar_code(n: int) -> str:
    """e_n ... e_2 r_1 e_3 ... e_n."""
    return (
        "".join(sym_code("e", i) for i in range(n, 1, -1))
        + sym_code("r", 1)
        + "".join(sym_code("e", i) for i in range(3, n + 1))
    )


@lru_cache(maxsize=None)
def cox_group(label: OrbitLabel) -> CoxeterGroup:
    return CoxeterGroup(label.blocks)


def labels_for(n: int) -> List[OrbitLabel]:
    out = [OrbitLabel("Y", t, n) for t in range(0, n // 2 + 1)]
    if n % 2 == 0:
        out.append(OrbitLabel("Y'", n // 2, n))
    out += [OrbitLabel("Y*", t, n) for t in range(1, n // 2 + 1)]
    return out


@dataclass
class Orbit:
    label: OrbitLabel
    rep: int
    members: List[int]  # sorted by (height, mask)
    index: Dict[int, int] = field(default_factory=dict)


class Admissible:
    """All admissible-set machinery for one n."""

    def __init__(self, n: int):
        self.n = n
        self.rs = rs = root_system(n)
        self.N = len(rs.roots)
        self.simple_bit = [0] + [1 << rs.simple_index[i - 1] for i in rs.nodes]
        self._closure_cache: Dict[int, int] = {}
        self._act_cache: Dict[Tuple[str, int], int] = {}
        self.ortho = [
            sum(1 << b for b in range(self.N) if rs.gram[a][b] == 0) for a in range(self.N)
        ]
        self._build_orbits()

    # ------------------------------------------------------------------ sets
    def mask_of(self, roots: Iterable) -> int:
        m = 0
        for r in roots:
            if isinstance(r, str):
                k = self.rs.parse_root(r)
            else:
                k = self.rs.index[r.positive()]
            m |= 1 << k
        return m

    def is_orthogonal(self, mask: int) -> bool:
        for a in _bits(mask):
            if mask & ~self.ortho[a] & ~(1 << a):
                return False
        return True

    def closure(self, mask: int) -> int:
        if mask in self._closure_cache:
            return self._closure_cache[mask]
        if not self.is_orthogonal(mask):
            raise NotOrthogonal("roots are not mutually orthogonal")
        rs = self.rs
        cur = mask
        while True:
            new = cur
            mem = _bits(cur)
            for b1, b2, b3 in combinations(mem, 3):
                for a in range(self.N):
                    g = rs.gram[a]
                    if abs(g[b1]) == 1 and abs(g[b2]) == 1 and abs(g[b3]) == 1:
                        k, _ = rs.root_reflect[b3][a]
                        k, _ = rs.root_reflect[b2][k]
                        k, _ = rs.root_reflect[b1][k]
                        k, _ = rs.root_reflect[a][k]
                        new |= 1 << k
            if new == cur:
                break
            cur = new
        if not self.is_orthogonal(cur):
            raise NotOrthogonal("closure left the orthogonal sets")
        self._closure_cache[mask] = cur
        return cur

    def reflect_mask(self, root: int, mask: int) -> int:
        out = 0
        row = self.rs.root_reflect[root]
        for b in _bits(mask):
            out |= 1 << row[b][0]
        return out

    def act_r(self, i: int, mask: int) -> int:
        return self.reflect_mask(self.rs.simple_index[i - 1], mask)

    def act_e(self, i: int, mask: int) -> int:
        key = ("e%d" % i, mask)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        a = self.rs.simple_index[i - 1]
        if mask >> a & 1:
            out = mask
        else:
            bad = mask & ~self.ortho[a]
            if not bad:
                out = self.closure(mask | (1 << a))
            else:
                beta = _bits(bad)[0]
                out = self.reflect_mask(beta, self.act_r(i, mask))
        self._act_cache[key] = out
        return out

    def act(self, c: str, mask: int) -> int:
        return self.act_r(idx(c), mask) if is_r(c) else self.act_e(idx(c), mask)

    def eval_code(self, code: str, mask: int = 0) -> int:
        for c in reversed(code):
            mask = self.act(c, mask)
        return mask

    # --------------------------------------------------------------- orbits
    def _build_orbits(self) -> None:
        n = self.n
        gens = [sym_code("r", i) for i in self.rs.nodes] + [sym_code("e", i) for i in self.rs.nodes]
        # all admissible sets reachable from the empty set, with 0/1 heights
        dist = {0: 0}
        dq = deque([0])
        while dq:
            m = dq.popleft()
            for c in gens:
                y = self.act(c, m)
                w = 1 if is_r(c) else 0
                nd = dist[m] + w
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    if w:
                        dq.append(y)
                    else:
                        dq.appendleft(y)
        self.height = dist
        self.orbits: List[Orbit] = []
        self.orbit_of: Dict[int, int] = {}
        for lab in labels_for(n):
            rep = self.closure(sum(self.simple_bit[y] for y in lab.nodes))
            seen = {rep}
            q = [rep]
            while q:
                m = q.pop()
                for i in self.rs.nodes:
                    y = self.act_r(i, m)
                    if y not in seen:
                        seen.add(y)
                        q.append(y)
            members = sorted(seen, key=lambda m: (dist[m], m))
            orb = Orbit(lab, rep, members, {m: k for k, m in enumerate(members)})
            for m in members:
                if m in self.orbit_of:
                    raise AssertionError("orbits overlap")
                self.orbit_of[m] = len(self.orbits)
            self.orbits.append(orb)
        if set(self.orbit_of) != set(dist):
            raise AssertionError("orbit representatives do not cover all admissible sets")
        for orb in self.orbits:
            if dist[orb.rep] != 0:
                raise AssertionError(f"representative of {orb.label} has nonzero height")
        self._build_a_words()

    def label_of(self, mask: int) -> OrbitLabel:
        return self.orbits[self.orbit_of[mask]].label

    def orbit(self, label: OrbitLabel) -> Orbit:
        for o in self.orbits:
            if o.label == label:
                return o
        raise KeyError(str(label))

    # --------------------------------------------------------------- A-words
    def _build_a_words(self) -> None:
        """Minimal words a_B with a_B(B_Y) = B inside each orbit.

        Parents: an r-descent (smallest k with ht(r_k B) < ht(B)), otherwise
        an e-step from an equal-height set closer (in e-steps) to the
        height-level sources.
        """
        self.a_parent: Dict[int, Tuple[str, int]] = {}
        self.a_code: Dict[int, str] = {}
        for orb in self.orbits:
            mem = set(orb.members)
            ht = self.height
            levels: Dict[int, List[int]] = {}
            for m in orb.members:
                levels.setdefault(ht[m], []).append(m)
            for h in sorted(levels):
                layer = set(levels[h])
                edist: Dict[int, int] = {}
                q = deque()
                for m in sorted(layer):
                    if h == 0 and m == orb.rep:
                        edist[m] = 0
                        q.append(m)
                        continue
                    if h == 0:
                        continue
                    for k in self.rs.nodes:
                        y = self.act_r(k, m)
                        if ht[y] < h:
                            self.a_parent[m] = (sym_code("r", k), y)
                            edist[m] = 0
                            q.append(m)
                            break
                # e-steps within the layer
                preds: Dict[int, List[Tuple[int, int]]] = {}
                for c in sorted(layer):
                    for j in self.rs.nodes:
                        y = self.act_e(j, c)
                        if y in layer and y != c:
                            preds.setdefault(y, []).append((j, c))
                while q:
                    c = q.popleft()
                    for j in self.rs.nodes:
                        y = self.act_e(j, c)
                        if y in layer and y not in edist:
                            edist[y] = edist[c] + 1
                            q.append(y)
                for m in sorted(layer):
                    if m not in edist:
                        raise AssertionError("set unreachable inside its orbit")
                    if m in self.a_parent or (h == 0 and m == orb.rep):
                        continue
                    best = min(
                        (j, c) for j, c in preds.get(m, []) if edist.get(c, 10**9) == edist[m] - 1
                    )
                    self.a_parent[m] = (sym_code("e", best[0]), best[1])
            for m in orb.members:
                self.a_code[m] = self._a_word(m, orb.rep)

    def _a_word(self, m: int, rep: int) -> str:
        out = []
        while m != rep:
            c, m = self.a_parent[m]
            out.append(c)
        return "".join(out)

    # ------------------------------------------------------------ reporting
    def rank_table(self) -> List[Tuple[OrbitLabel, int, int, int]]:
        rows = []
        for o in self.orbits:
            size = len(o.members)
            g = o.label.group_order
            rows.append((o.label, size, g, size * size * g))
        return rows

    def to_json(self) -> dict:
        rs = self.rs
        body = {
            "version": CACHE_VERSION,
            "n": self.n,
            "orbits": [
                {
                    "label": str(o.label),
                    "rep": [rs.root_str(k) for k in _bits(o.rep)],
                    "group_order": o.label.group_order,
                    "components": o.label.components,
                    "members": [
                        {
                            "set": [rs.root_str(k) for k in _bits(m)],
                            "height": self.height[m],
                            "a_word": _fmt(self.a_code[m]),
                        }
                        for m in o.members
                    ],
                }
                for o in self.orbits
            ],
        }
        return body


def _fmt(code: str) -> str:
    return " ".join(f"{k}{i}" for k, i in map(code_sym, code))


def checksum(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


def write_orbit_cache(adm: Admissible, cache_dir: Path) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    body = adm.to_json()
    path = cache_dir / f"orbits_n{adm.n}.json"
    path.write_text(json.dumps({"checksum": checksum(body), "body": body}, indent=1))
    return path


def read_orbit_cache(path: Path) -> Optional[dict]:
    """Return the cached body if present, current and intact."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError):
        return None
    body = doc.get("body")
    if not isinstance(body, dict) or body.get("version") != CACHE_VERSION:
        return None
    if checksum(body) != doc.get("checksum"):
        return None
    return body


def sync_orbit_cache(n: int, cache_dir: Optional[Path]) -> Optional[Path]:
    """Write the orbit table for n unless a valid identical one exists."""
    if cache_dir is None:
        return None
    adm = admissible(n)
    path = Path(cache_dir) / f"orbits_n{n}.json"
    body = read_orbit_cache(path)
    if body != adm.to_json():
        write_orbit_cache(adm, Path(cache_dir))
    return path


@lru_cache(maxsize=None)
def admissible(n: int) -> Admissible:
    return Admissible(n)


# ------------------------------------------------------------ public helpers
def _as_set(B, n: Optional[int]) -> AdmissibleSet:
    if isinstance(B, AdmissibleSet):
        return B
    B = list(B)
    if n is None:
        if not B or isinstance(B[0], str):
            raise ValueError("n is required")
        n = B[0].n
    return AdmissibleSet(n, admissible(n).mask_of(B))


def closure(B, n: Optional[int] = None) -> AdmissibleSet:
    s = _as_set(B, n)
    return AdmissibleSet(s.n, admissible(s.n).closure(s.mask))


def act_r(i: int, B: AdmissibleSet) -> AdmissibleSet:
    return AdmissibleSet(B.n, admissible(B.n).act_r(i, B.mask))


def act_e(i: int, B: AdmissibleSet) -> AdmissibleSet:
    return AdmissibleSet(B.n, admissible(B.n).act_e(i, B.mask))


def orbit_of(B: AdmissibleSet) -> Tuple[OrbitLabel, List[AdmissibleSet]]:
    adm = admissible(B.n)
    o = adm.orbits[adm.orbit_of[B.mask]]
    return o.label, [AdmissibleSet(B.n, m) for m in o.members]


def set_height(B: AdmissibleSet) -> int:
    return admissible(B.n).height[B.mask]


def a_B_word(B: AdmissibleSet) -> Word:
    """A_B = a_B e_Y: a minimal-height word sending the empty set to B."""
    adm = admissible(B.n)
    lab = adm.label_of(B.mask)
    return Word.from_code(adm.a_code[B.mask] + lab.e_code, 0)


def double_factorial_odd(n: int) -> int:
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def rank_formula(n: int) -> int:
    return (2**n + 1) * double_factorial_odd(n) - (2 ** (n - 1) + 1) * factorial(n)
