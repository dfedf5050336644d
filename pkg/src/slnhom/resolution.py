"""Resolved trivalent graphs of braid-closure diagrams.

Every crossing is replaced either by a singular edge or by a pair of
parallel normal edges (positive crossing: 0 -> parallel, 1 -> singular;
negative crossing: 0 -> singular, 1 -> parallel).

Geometry is discretized into *slots*: slot ``(c, t)`` is the piece of
column ``c`` just below crossing height ``t``.  Slot ``(c, 0)`` also carries
the closure arc of column ``c``.  A normal edge is a maximal run of slots in
one column not interrupted by a singular edge; since parallel pairs never
change columns, every normal edge lives in a single column.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .diagram import LinkDiagram

Slot = tuple[int, int]


@dataclass(frozen=True)
class NormalEdge:
    id: int
    column: int
    slots: tuple[Slot, ...]  # bottom-to-top order, starting right above a head
    closure_arcs: int

    @property
    def embedding(self) -> list[tuple]:
        """Diagram segments traversed, in order."""
        segs = []
        for c, t in self.slots:
            if t == 0:
                segs.append(("arc", c))
            segs.append(("strand", c, t))
        return segs


@dataclass(frozen=True)
class SingularEdge:
    crossing: int
    sign: int
    height: int
    columns: tuple[int, int]
    legs: tuple[int, int]  # normal edge ids (left, right)
    heads: tuple[int, int]


@dataclass(frozen=True)
class ParallelPair:
    crossing: int
    sign: int
    height: int
    columns: tuple[int, int]
    edges: tuple[int, int]


class ResolvedGraph:
    """The resolution ``D(cr)`` of a braid-closure diagram."""

    def __init__(self, diagram: LinkDiagram, cr: frozenset[int] | set[int] | tuple = ()):
        cr = frozenset(cr)
        ids = {c.id for c in diagram.crossings}
        unknown = cr - ids
        if unknown:
            raise ValueError(f"unknown crossing ids {sorted(unknown)}")
        self.diagram = diagram
        self.cr = cr
        self.strands = diagram.strands
        self.height = len(diagram.crossings)
        self.singular_crossings = tuple(
            c.id for c in diagram.crossings if (c.id in cr) == (c.sign > 0)
        )
        self._build()

    def is_singular(self, crossing: int) -> bool:
        return crossing in self._singular_set

    def _build(self):
        H = max(self.height, 1)
        self._singular_set = frozenset(self.singular_crossings)
        touches: dict[int, list[int]] = {c: [] for c in range(1, self.strands + 1)}
        for x in self.singular_crossings:
            k = self.diagram.crossings[x].columns[0]
            touches[k].append(x)
            touches[k + 1].append(x)

        edges: list[NormalEdge] = []
        slot_edge: dict[Slot, int] = {}
        for col in range(1, self.strands + 1):
            hs = sorted(touches[col])
            if not hs:
                slots = tuple((col, t) for t in range(H))
                edges.append(NormalEdge(len(edges), col, slots, 1))
                continue
            for i, h in enumerate(hs):
                nxt = hs[(i + 1) % len(hs)]
                slots = []
                t = (h + 1) % H
                arcs = 0
                while True:
                    if t == 0:
                        arcs += 1
                    slots.append((col, t))
                    if t == nxt:
                        break
                    t = (t + 1) % H
                edges.append(NormalEdge(len(edges), col, tuple(slots), arcs))
        for e in edges:
            for s in e.slots:
                slot_edge[s] = e.id
        self.normal_edges = tuple(edges)
        self.slot_edge = slot_edge

        sing, par = [], []
        for c in self.diagram.crossings:
            k = c.columns[0]
            below = (slot_edge[(k, c.height)], slot_edge[(k + 1, c.height)])
            if c.id in self._singular_set:
                t1 = (c.height + 1) % H
                above = (slot_edge[(k, t1)], slot_edge[(k + 1, t1)])
                sing.append(SingularEdge(c.id, c.sign, c.height, c.columns, below, above))
            else:
                par.append(ParallelPair(c.id, c.sign, c.height, c.columns, below))
        self.singular_edges = tuple(sing)
        self.parallel_pairs = tuple(par)
        self.singular_by_crossing = {s.crossing: s for s in sing}

    @cached_property
    def counts(self) -> tuple[int, int, int, int]:
        """(N0+, N1+, N0-, N1-)."""
        n0p = n1p = n0m = n1m = 0
        for c in self.diagram.crossings:
            if c.sign > 0:
                if c.id in self.cr:
                    n1p += 1
                else:
                    n0p += 1
            elif c.id in self.cr:
                n1m += 1
            else:
                n0m += 1
        return n0p, n1p, n0m, n1m

    @property
    def parallel_shift(self) -> int:
        """N0+ - N1-: +1 per 0-resolved positive, -1 per 1-resolved negative crossing."""
        n0p, _, _, n1m = self.counts
        return n0p - n1m

    @property
    def cohomological_degree(self) -> int:
        """N1+ - N0-."""
        _, n1p, n0m, _ = self.counts
        return n1p - n0m

    @cached_property
    def top_edges(self) -> tuple[int, ...]:
        """Edge carrying the closure arc of each column 1..s."""
        return tuple(self.slot_edge[(c, 0)] for c in range(1, self.strands + 1))

    def __repr__(self):
        return (
            f"ResolvedGraph({self.diagram.source}, cr={sorted(self.cr)}, "
            f"singular={list(self.singular_crossings)})"
        )


def resolve(diagram: LinkDiagram, cr=()) -> ResolvedGraph:
    return ResolvedGraph(diagram, cr)


def subsets_in_order(m: int) -> Iterator[frozenset[int]]:
    """All subsets of range(m), binary-counter order (bit i <-> crossing i)."""
    for mask in range(1 << m):
        yield frozenset(i for i in range(m) if mask >> i & 1)


def all_resolutions(diagram: LinkDiagram) -> Iterator[tuple[frozenset[int], ResolvedGraph]]:
    for cr in subsets_in_order(len(diagram.crossings)):
        yield cr, ResolvedGraph(diagram, cr)
