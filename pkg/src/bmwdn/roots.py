"""Root system of type D_n with the node labelling used throughout.

Simple roots: a1 = e1+e2, a2 = e2-e1, ai = ei-e(i-1) for i >= 3.  The
diagram has 1~3, 2~3 and i~i+1 for i >= 3.  Positive roots are stored as
integer vectors in the orthonormal basis and indexed 0..n(n-1)-1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

__all__ = [
    "Root",
    "RootSystem",
    "root_system",
    "reflect",
    "mate",
    "support",
    "proj",
    "a_word",
]


@dataclass(frozen=True, order=True)
class Root:
    """A root of D_n as an integer vector in the e-basis."""

    vec: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vec)

    def is_positive(self) -> bool:
        for x in reversed(self.vec):
            if x:
                return x > 0
        raise ValueError("zero vector")

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.vec))

    def dot(self, other: "Root") -> int:
        return sum(a * b for a, b in zip(self.vec, other.vec))

    def positive(self) -> "Root":
        return self if self.is_positive() else -self

    def __str__(self) -> str:
        nz = [(i + 1, x) for i, x in enumerate(self.vec) if x]
        (i, xi), (j, xj) = nz
        if xi == xj:
            return f"e{i}+e{j}" if xi > 0 else f"-e{i}-e{j}"
        return f"e{j}-e{i}" if xj > 0 else f"e{i}-e{j}"


def _simple_vec(n: int, i: int) -> Tuple[int, ...]:
    v = [0] * n
    if i == 1:
        v[0], v[1] = 1, 1
    elif i == 2:
        v[0], v[1] = -1, 1
    else:
        v[i - 1], v[i - 2] = 1, -1
    return tuple(v)


class RootSystem:
    """Tables for D_n: roots, heights, reflections and the node graph."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        self.n = n
        self.nodes = list(range(1, n + 1))
        self.simple = [Root(_simple_vec(n, i)) for i in self.nodes]
        adj: Dict[int, List[int]] = {i: [] for i in self.nodes}
        edges = [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        self.adj = {i: tuple(sorted(v)) for i, v in adj.items()}
        self.roots: List[Root] = []
        for j in range(1, n):
            for i in range(j):
                v = [0] * n
                v[j], v[i] = 1, -1
                self.roots.append(Root(tuple(v)))
                v = [0] * n
                v[j], v[i] = 1, 1
                self.roots.append(Root(tuple(v)))
        self.roots.sort(key=lambda r: (self._height(r), r.vec[::-1]))
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.simple_index = [self.index[a] for a in self.simple]
        self.heights = [self._height(r) for r in self.roots]
        self.coeffs = [self._coefficients(r) for r in self.roots]
        self.gram = [[a.dot(b) for b in self.roots] for a in self.roots]
        # reflect_table[i][k] = (index, sign) of r_{alpha_i}(root k)
        self.reflect_table = [
            [self._reflect_index(self.simple[i - 1], r) for r in self.roots]
            for i in self.nodes
        ]
        self.root_reflect = [
            [self._reflect_index(g, r) for r in self.roots] for g in self.roots
        ]
        self.mate_index = [self.index[self._mate(r)] for r in self.roots]

    # ------------------------------------------------------------------ basics
    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def _height(self, r: Root) -> int:
        return sum(self._coefficients(r).values())

    def _coefficients(self, r: Root) -> Dict[int, int]:
        """Simple-root coordinates of a positive root."""
        nz = [(k + 1, x) for k, x in enumerate(r.vec) if x]
        (i, xi), (j, xj) = nz
        c: Dict[int, int] = {}
        if xi == -1:  # e_j - e_i
            if i == 1:
                c[2] = 1
                for k in range(3, j + 1):
                    c[k] = 1
            else:
                for k in range(i + 1, j + 1):
                    c[k] = 1
        else:  # e_i + e_j
            c[1] = 1
            for k in range(3, j + 1):
                c[k] = c.get(k, 0) + 1
            if i >= 2:
                c[2] = 1
                for k in range(3, i + 1):
                    c[k] = c.get(k, 0) + 1
        return c

    def _reflect_index(self, g: Root, r: Root) -> Tuple[int, int]:
        d = r.dot(g)
        v = tuple(a - d * b for a, b in zip(r.vec, g.vec))
        img = Root(v)
        if img.is_positive():
            return self.index[img], 1
        return self.index[-img], -1

    @staticmethod
    def _mate(r: Root) -> Root:
        nz = [k for k, x in enumerate(r.vec) if x]
        i = nz[0]
        v = list(r.vec)
        v[i] = -v[i]
        return Root(tuple(v))

    # ------------------------------------------------------------------ queries
    def height(self, r: Root) -> int:
        return self.heights[self.index[r.positive()]]

    def support(self, r: Root) -> frozenset:
        return frozenset(self.coeffs[self.index[r.positive()]])

    def path(self, i: int, k: int) -> List[int]:
        """Geodesic node path from i to k in the diagram."""
        prev = {i: None}
        q = deque([i])
        while q:
            x = q.popleft()
            if x == k:
                break
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    q.append(y)
        out = [k]
        while out[-1] != i:
            out.append(prev[out[-1]])
        return out[::-1]

    def proj(self, k: int, r: Root) -> int:
        """Node of Supp(r) nearest to k."""
        supp = self.support(r)
        return min(supp, key=lambda j: (len(self.path(k, j)), j))

    def root_str(self, k: int) -> str:
        if k in self.simple_index:
            return f"a{self.simple_index.index(k) + 1}"
        return str(self.roots[k])

    def parse_root(self, text: str) -> int:
        text = text.strip()
        if text.startswith("a"):
            return self.simple_index[int(text[1:]) - 1]
        import re

        m = re.fullmatch(r"e(\d+)([+-])e(\d+)", text)
        if not m:
            raise ValueError(f"bad root {text!r}")
        a, s, b = int(m.group(1)), m.group(2), int(m.group(3))
        v = [0] * self.n
        if s == "+":
            v[a - 1] += 1
            v[b - 1] += 1
        else:
            v[a - 1] += 1
            v[b - 1] -= 1
        r = Root(tuple(v))
        if not r.is_positive():
            raise ValueError(f"{text!r} is not a positive root")
        return self.index[r]


@lru_cache(maxsize=None)
def root_system(n: int) -> RootSystem:
    return RootSystem(n)


def reflect(beta: Root, gamma: Root) -> Root:
    """r_gamma(beta) = beta - (beta, gamma) gamma."""
    d = beta.dot(gamma)
    return Root(tuple(a - d * b for a, b in zip(beta.vec, gamma.vec)))


def mate(beta: Root) -> Root:
    """Orthogonal mate: e_j - e_i <-> e_j + e_i."""
    return RootSystem._mate(beta.positive())


def support(beta: Root) -> frozenset:
    return root_system(beta.n).support(beta)


def proj(k: int, beta: Root) -> int:
    return root_system(beta.n).proj(k, beta)


def _min_r_word(rs: RootSystem, start: int, target: int) -> List[int]:
    """Lexicographically smallest shortest r-word taking root start to target.

    The word acts right to left, so it is built from the target backwards.
    """
    dist = {start: 0}
    q = deque([start])
    while q:
        x = q.popleft()
        for i in rs.nodes:
            y = rs.reflect_table[i - 1][x][0]
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    word: List[int] = []
    cur = target
    while cur != start:
        for i in rs.nodes:
            y = rs.reflect_table[i - 1][cur][0]
            if dist.get(y, -1) == dist[cur] - 1:
                word.append(i)
                cur = y
                break
    return word


def a_word(beta: Root, k: int, n: Optional[int] = None):
    """Canonical minimal word a_{beta,k} taking {alpha_k} to {beta}.

    Returns a ``Word`` (see ``words``).
    """
    from .words import Word

    rs = root_system(n or beta.n)
    b = rs.index[beta.positive()]
    supp = rs.coeffs[b]
    if k in supp:
        word = _min_r_word(rs, rs.simple_index[k - 1], b)
        return Word(tuple(("r", i) for i in word), 0)
    j = rs.proj(k, beta)
    p = rs.path(j, k)  # j ... k' k
    head = _min_r_word(rs, rs.simple_index[j - 1], b)
    tail = [("e", x) for x in p[:-1]]
    return Word(tuple(("r", i) for i in head) + tuple(tail), 0)


def coefficient_vector(rs: RootSystem, k: int) -> Sequence[int]:
    c = rs.coeffs[k]
    return [c.get(i, 0) for i in rs.nodes]
