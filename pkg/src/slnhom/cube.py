"""Commutative and skew-commutative cubes of free graded modules and their total complexes.

Matrices are stored column-wise: ``m[i]`` is the image of source basis
element ``i`` as a dict {target index: coefficient}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

Column = dict[int, int]
Matrix = list[Column]


class CubeStructureError(ValueError):
    pass


def apply(m: Matrix, vec: Mapping[int, int]) -> Column:
    out: Column = {}
    for i, c in vec.items():
        for j, v in m[i].items():
            out[j] = out.get(j, 0) + c * v
    return {j: v for j, v in out.items() if v}


def compose(second: Matrix, first: Matrix) -> Matrix:
    return [apply(second, col) for col in first]


def _subsets(index: tuple[int, ...]):
    for mask in range(1 << len(index)):
        yield frozenset(x for k, x in enumerate(index) if mask >> k & 1)


@dataclass
class CommutativeCube:
    """``gradings[X]`` lists the quantum degree of every basis element of V(X);
    ``maps[(X, a)]`` is the edge map V(X) -> V(X + a)."""

    index: tuple[int, ...]
    gradings: dict[frozenset, list[int]]
    maps: dict[tuple[frozenset, int], Matrix]
    skew: bool = field(default=False)

    def squares(self):
        for X in _subsets(self.index):
            free = [a for a in self.index if a not in X]
            for i, a in enumerate(free):
                for b in free[i + 1 :]:
                    yield X, a, b

    def square_violation(self):
        """First (X, a, b) whose square fails (anti)commutativity, or None."""
        sgn = 1 if self.skew else -1
        for X, a, b in self.squares():
            p = compose(self.maps[(X | {a}, b)], self.maps[(X, a)])
            r = compose(self.maps[(X | {b}, a)], self.maps[(X, b)])
            for ci, cj in zip(p, r):
                total = dict(ci)
                for k, v in cj.items():
                    total[k] = total.get(k, 0) + sgn * v
                if any(total.values()):
                    return X, a, b
        return None

    def grading_violation(self):
        for (X, a), m in self.maps.items():
            gs, gt = self.gradings[X], self.gradings[X | {a}]
            for i, col in enumerate(m):
                for j in col:
                    if gs[i] != gt[j]:
                        return X, a, i, j
        return None


def skew_sign(X: frozenset, a: int) -> int:
    """epsilon(X, a) = (-1)^#{b in X : b < a}."""
    return -1 if sum(1 for b in X if b < a) % 2 else 1


def skew_twist(V: CommutativeCube, check: bool = True) -> CommutativeCube:
    if V.skew:
        raise CubeStructureError("cube is already skew")
    if check:
        bad = V.square_violation()
        if bad is not None:
            X, a, b = bad
            raise CubeStructureError(f"square (X={sorted(X)}, a={a}, b={b}) does not commute")
    maps = {}
    for (X, a), m in V.maps.items():
        s = skew_sign(X, a)
        maps[(X, a)] = m if s == 1 else [{j: -v for j, v in col.items()} for col in m]
    return CommutativeCube(V.index, V.gradings, maps, skew=True)


@dataclass
class ChainComplex:
    """Free graded chain complex; ``d[i]`` maps degree i to degree i + 1."""

    gradings: dict[int, list[int]]
    d: dict[int, Matrix]
    blocks: dict[int, list[tuple[frozenset, int]]] = field(default_factory=dict)

    def degrees(self):
        return sorted(self.gradings)

    def differential(self, i: int) -> Matrix:
        if i in self.d:
            return self.d[i]
        return [{} for _ in self.gradings.get(i, [])]

    def d_squared_witness(self):
        """(i, basis index) with d^{i+1} d^i != 0, or None."""
        for i in self.degrees():
            if i + 1 not in self.d or i not in self.d:
                continue
            nxt = self.d[i + 1]
            for k, col in enumerate(self.d[i]):
                if apply(nxt, col):
                    return i, k
        return None


def total_complex(W: CommutativeCube, degree_of: Callable[[frozenset], int] | None = None) -> ChainComplex:
    if degree_of is None:
        degree_of = len
    if not W.skew:
        raise CubeStructureError("total complex needs a skew cube")
    for (X, a) in W.maps:
        if degree_of(X | {a}) != degree_of(X) + 1:
            raise CubeStructureError(f"degree_of does not increase by 1 along edge ({sorted(X)}, {a})")
    offsets: dict[frozenset, int] = {}
    gradings: dict[int, list[int]] = {}
    blocks: dict[int, list[tuple[frozenset, int]]] = {}
    for X in _subsets(W.index):
        i = degree_of(X)
        gr = gradings.setdefault(i, [])
        offsets[X] = len(gr)
        blocks.setdefault(i, []).append((X, len(gr)))
        gr.extend(W.gradings[X])
    d: dict[int, Matrix] = {}
    for i, gr in gradings.items():
        if i + 1 not in gradings:
            continue
        d[i] = [dict() for _ in gr]
    for (X, a), m in W.maps.items():
        i = degree_of(X)
        so, to = offsets[X], offsets[X | {a}]
        cols = d[i]
        for k, col in enumerate(m):
            tgt = cols[so + k]
            for j, v in col.items():
                tgt[to + j] = tgt.get(to + j, 0) + v
    for cols in d.values():
        for k, col in enumerate(cols):
            cols[k] = {j: v for j, v in col.items() if v}
    return ChainComplex(gradings, d, blocks)
