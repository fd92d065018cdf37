"""Finite Coxeter groups W(M_Y) in a concrete signed-permutation model.

A group is a product of blocks: an isolated A1 acts on one coordinate by a
sign change, A_k permutes k+1 coordinates and D_k acts by even signed
permutations of k coordinates.  Elements are tuples ``w`` with
``w[j] = +-(image index + 1)``, meaning ``w(e_j) = sign * e_image``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Sequence, Tuple

__all__ = ["Block", "CoxeterGroup", "group_order"]

Elem = Tuple[int, ...]


@dataclass(frozen=True)
class Block:
    kind: str  # "A" or "D"
    rank: int
    gens: Tuple[int, ...]  # abstract generator indices, in diagram order

    @property
    def order(self) -> int:
        return group_order(self.kind, self.rank)

    @property
    def tag(self) -> str:
        return f"{self.kind}{self.rank}"


def group_order(kind: str, rank: int) -> int:
    if rank <= 0:
        return 1
    if kind == "A":
        return factorial(rank + 1)
    if kind == "D":
        return 2 ** (rank - 1) * factorial(rank)
    raise ValueError(kind)


def _reflection(vec: Sequence[int]) -> Elem:
    """Signed permutation of the reflection in a root of squared length 1 or 2."""
    norm = sum(v * v for v in vec)
    out = []
    for j in range(len(vec)):
        # image of basis vector e_j
        img = [0] * len(vec)
        img[j] = 1
        c = vec[j]
        if c:
            f = 2 * c // norm
            img = [a - f * b for a, b in zip(img, vec)]
        (k,) = [i for i, x in enumerate(img) if x]
        out.append((k + 1) * img[k])
    return tuple(out)


class CoxeterGroup:
    """Product of A/D blocks with abstract generator indices."""

    def __init__(self, blocks: Sequence[Block]):
        self.blocks = tuple(blocks)
        self.gens: List[int] = sorted(g for b in self.blocks for g in b.gens)
        self.dim = 0
        self.roots: Dict[int, Tuple[int, ...]] = {}
        self.adj: Dict[int, set] = {g: set() for g in self.gens}
        spans = []
        for b in self.blocks:
            width = b.rank + 1 if b.kind == "A" else b.rank
            if b.kind == "A" and b.rank == 1 and len(b.gens) == 1:
                width = 1  # isolated A1: sign change on one coordinate
            spans.append((self.dim, width, b))
            self.dim += width
        for off, width, b in spans:
            for pos, g in enumerate(b.gens, start=1):
                v = [0] * self.dim
                if b.kind == "A" and width == 1:
                    v[off] = 1
                elif b.kind == "A":
                    v[off + pos] = 1
                    v[off + pos - 1] = -1
                else:  # D_k labelling: 1 ~ 3, 2 ~ 3, i ~ i+1
                    if pos == 1:
                        v[off], v[off + 1] = 1, 1
                    elif pos == 2:
                        v[off], v[off + 1] = -1, 1
                    else:
                        v[off + pos - 1], v[off + pos - 2] = 1, -1
                self.roots[g] = tuple(v)
        for a in self.gens:
            for b in self.gens:
                if a != b:
                    ip = sum(x * y for x, y in zip(self.roots[a], self.roots[b]))
                    if ip:
                        self.adj[a].add(b)
        self.gen_elem = {g: _reflection(self.roots[g]) for g in self.gens}
        self.identity: Elem = tuple(range(1, self.dim + 1))

    # ---------------------------------------------------------------- algebra
    @property
    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= b.order
        return out

    def mul(self, a: Elem, b: Elem) -> Elem:
        """Composition a after b."""
        out = []
        for x in b:
            j = abs(x) - 1
            y = a[j]
            out.append(y if x > 0 else -y)
        return tuple(out)

    def inv(self, a: Elem) -> Elem:
        out = [0] * len(a)
        for j, x in enumerate(a):
            k = abs(x) - 1
            out[k] = (j + 1) if x > 0 else -(j + 1)
        return tuple(out)

    def apply(self, a: Elem, vec: Sequence[int]) -> Tuple[int, ...]:
        out = [0] * len(vec)
        for j, c in enumerate(vec):
            if c:
                x = a[j]
                out[abs(x) - 1] += c if x > 0 else -c
        return tuple(out)

    def commute(self, a: int, b: int) -> bool:
        return b not in self.adj[a]

    def braid_length(self, a: int, b: int) -> int:
        if a == b:
            return 1
        return 3 if b in self.adj[a] else 2

    @staticmethod
    def _negative(vec: Sequence[int]) -> bool:
        for x in reversed(vec):
            if x:
                return x < 0
        return False

    def left_descent(self, w: Elem, g: int) -> bool:
        """True when l(g w) < l(w)."""
        return self._negative(self.apply(self.inv(w), self.roots[g]))

    def right_descent(self, w: Elem, g: int) -> bool:
        """True when l(w g) < l(w)."""
        return self._negative(self.apply(w, self.roots[g]))

    def from_word(self, word: Sequence[int]) -> Elem:
        w = self.identity
        for g in word:
            w = self.mul(w, self.gen_elem[g])
        return w

    def canonical_word(self, w: Elem) -> Tuple[int, ...]:
        """ShortLex-minimal reduced word (generators compared by index)."""
        out = []
        while w != self.identity:
            for g in self.gens:
                if self.left_descent(w, g):
                    out.append(g)
                    w = self.mul(self.gen_elem[g], w)
                    break
        return tuple(out)

    def length(self, w: Elem) -> int:
        return len(self.canonical_word(w))

    def elements(self) -> List[Elem]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for g in self.gens:
                    v = self.mul(w, self.gen_elem[g])
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(seen, key=lambda w: (self.length(w), self.canonical_word(w)))

    # ------------------------------------------------- braid-move bookkeeping
    def make_end_with(self, word: Sequence[int], g: int) -> List[Tuple[int, int, Tuple[int, ...]]]:
        """Braid/commutation moves turning a reduced word into one ending in g.

        Requires g to be a right descent of the element.  Each move is
        ``(position, length, new_segment)``; applying them in order to
        ``word`` yields the target.
        """
        moves: List[Tuple[int, int, Tuple[int, ...]]] = []
        cur = list(word)
        self._end_with(cur, len(cur), g, moves)
        return moves

    def _end_with(self, cur: List[int], end: int, g: int, moves) -> None:
        # make cur[:end] (a reduced word) end with g, editing cur in place
        t = cur[end - 1]
        if t == g:
            return
        m = self.braid_length(g, t)
        # target suffix: alternating word of length m ending in t, then flip
        # build ... g t g t (ending t) recursively
        want = [t if (m - 1 - k) % 2 == 0 else g for k in range(m)]
        # positions end-m .. end-1 should become `want`
        for k in range(m - 1, 0, -1):
            # ensure cur[:end-(m-k)] ends with want[k-1]
            self._end_with(cur, end - (m - k), want[k - 1], moves)
        new = [g if (m - 1 - k) % 2 == 0 else t for k in range(m)]
        pos = end - m
        moves.append((pos, m, tuple(new)))
        cur[pos:end] = new

    def canonicalize_moves(self, word: Sequence[int]) -> Tuple[List[tuple], Tuple[int, ...]]:
        """Moves taking an arbitrary word to the canonical reduced word.

        Moves are ``("braid", pos, length, new)`` or ``("cancel", pos)``
        where cancel deletes the adjacent pair ``g g`` at ``pos``.
        """
        moves: List[tuple] = []
        cur: List[int] = []
        w = self.identity
        for g in word:
            # cur is the canonical word of w; now append g
            if self.right_descent(w, g):
                sub: List[Tuple[int, int, Tuple[int, ...]]] = []
                tmp = list(cur)
                self._end_with(tmp, len(tmp), g, sub)
                moves.extend(("braid", p, ln, new) for p, ln, new in sub)
                moves.append(("cancel", len(tmp) - 1))
                tmp = tmp[:-1]
                w = self.mul(w, self.gen_elem[g])
                cur = tmp
            else:
                cur = cur + [g]
                w = self.mul(w, self.gen_elem[g])
            target = list(self.canonical_word(w))
            if cur != target:
                sub_moves = self._transform_reduced(cur, target)
                moves.extend(sub_moves)
                cur = target
        return moves, tuple(cur)

    def _transform_reduced(self, src: List[int], dst: List[int]) -> List[tuple]:
        """Braid moves from one reduced word to another of the same element."""
        moves: List[tuple] = []
        cur = list(src)
        end = len(cur)
        while end > 0:
            g = dst[end - 1]
            sub: List[Tuple[int, int, Tuple[int, ...]]] = []
            self._end_with(cur, end, g, sub)
            moves.extend(("braid", p, ln, new) for p, ln, new in sub)
            end -= 1
        assert cur == dst
        return moves
