"""Bigraded integer homology of quantum-graded chain complexes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cube import ChainComplex, apply
from .laurent import LaurentPolynomial
from .smith import invariant_factors


class DSquaredError(RuntimeError):
    def __init__(self, degree: int, index: int):
        self.degree, self.index = degree, index
        super().__init__(f"d^{degree + 1} d^{degree} != 0 on basis element {index} of degree {degree}")


@dataclass
class BigradedHomology:
    """(i, j) -> (free rank, torsion invariant factors)."""

    groups: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, (r, tors) in self.groups.items():
            tors = tuple(sorted(t for t in tors if t > 1))
            if r or tors:
                clean[(int(key[0]), int(key[1]))] = (int(r), tors)
        self.groups = dict(sorted(clean.items()))

    def rank(self, i: int, j: int) -> int:
        return self.groups.get((i, j), (0, ()))[0]

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self.groups.get((i, j), (0, ()))[1]

    def rank_table(self) -> dict[tuple[int, int], int]:
        return {k: r for k, (r, _) in self.groups.items() if r}

    def to_json_obj(self) -> dict:
        return {
            f"{i},{j}": {"rank": r, "torsion": list(t)}
            for (i, j), (r, t) in sorted(self.groups.items())
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str | dict) -> BigradedHomology:
        obj = json.loads(text) if isinstance(text, str) else text
        groups = {}
        for key, val in obj.items():
            i, j = key.split(",")
            groups[(int(i), int(j))] = (val["rank"], tuple(val["torsion"]))
        return cls(groups)

    def __eq__(self, other):
        return isinstance(other, BigradedHomology) and self.groups == other.groups


def _split_by_quantum(gradings: list[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for k, g in enumerate(gradings):
        out.setdefault(g, []).append(k)
    return out


def homology_of(C: ChainComplex, check: bool = True) -> BigradedHomology:
    """Integer homology, computed blockwise in each quantum degree."""
    if check:
        w = C.d_squared_witness()
        if w is not None:
            raise DSquaredError(*w)
    split = {i: _split_by_quantum(g) for i, g in C.gradings.items()}
    # (i, j) -> invariant factors of d^i restricted to quantum degree j
    factors: dict[tuple[int, int], list[int]] = {}
    for i, cols in C.d.items():
        tgt = split.get(i + 1, {})
        for j, idx in split[i].items():
            rows = tgt.get(j, [])
            rpos = {r: k for k, r in enumerate(rows)}
            block = []
            for k in idx:
                col = {}
                for r, v in cols[k].items():
                    if r not in rpos:
                        raise ValueError(f"differential d^{i} does not preserve the quantum grading")
                    col[rpos[r]] = v
                block.append(col)
            factors[(i, j)] = invariant_factors(block)
    groups = {}
    for i, by_j in split.items():
        for j, idx in by_j.items():
            out_rank = len(factors.get((i, j), []))
            inc = factors.get((i - 1, j), [])
            free = len(idx) - out_rank - len(inc)
            groups[(i, j)] = (free, tuple(f for f in inc if f > 1))
    return BigradedHomology(groups)


def graded_euler(H: BigradedHomology) -> LaurentPolynomial:
    acc: dict[int, int] = {}
    for (i, j), (r, _) in H.groups.items():
        acc[j] = acc.get(j, 0) + (-1 if i % 2 else 1) * r
    return LaurentPolynomial(acc)


def chain_euler(C: ChainComplex) -> LaurentPolynomial:
    """Sum over chain groups of (-1)^i q^gr; equals graded_euler of the homology."""
    acc: dict[int, int] = {}
    for i, gr in C.gradings.items():
        s = -1 if i % 2 else 1
        for g in gr:
            acc[g] = acc.get(g, 0) + s
    return LaurentPolynomial(acc)


def equal_bigraded(H1: BigradedHomology, H2: BigradedHomology) -> tuple[bool, list]:
    """Compare two homologies; the report lists every differing bidegree."""
    diffs = []
    for key in sorted(set(H1.groups) | set(H2.groups)):
        a = H1.groups.get(key, (0, ()))
        b = H2.groups.get(key, (0, ()))
        if a != b:
            diffs.append({"bidegree": key, "left": a, "right": b})
    return not diffs, diffs


def rational_ranks(H: BigradedHomology) -> dict[tuple[int, int], int]:
    return H.rank_table()
