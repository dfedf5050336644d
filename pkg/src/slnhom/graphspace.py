"""Colored graph spaces: the free graded abelian group on the MOY states of a resolution."""

from __future__ import annotations

from functools import cached_property

from .laurent import LaurentPolynomial
from .resolution import ResolvedGraph, SingularEdge
from .statesum import ColoredState, _enumerate_colorings, _rotation_fast


def deg_singular(E: SingularEdge, colors) -> int:
    """+1 / 0 / -1 according to whether the legs pass straight with increasing,
    crossing, or decreasing colors."""
    if isinstance(colors, ColoredState):
        colors = colors.colors
    a, b = colors[E.legs[0]], colors[E.legs[1]]
    if colors[E.heads[0]] == a:
        return 1 if a < b else -1
    return 0


def local_grade(graph: ResolvedGraph, colors, n: int) -> int:
    """Sum of singular-edge degrees plus the rotation term."""
    return sum(deg_singular(E, colors) for E in graph.singular_edges) + _rotation_fast(
        graph, colors, n
    )


def global_shift(graph: ResolvedGraph, n: int) -> int:
    """N0+ - N1- - n * wr(D): the part of the grading shared by every state."""
    return graph.parallel_shift - n * graph.diagram.writhe


def grade(state: ColoredState, n: int) -> int:
    """gr(sigma) = N0+ - N1- - wr(D) n + sum deg(E) + sum (2 sigma(C) - n - 1) rot(C)."""
    return global_shift(state.graph, n) + local_grade(state.graph, state.colors, n)


class GradedStateModule:
    """C(G) with its enumerated basis; the global shift is kept as an offset."""

    def __init__(self, graph: ResolvedGraph, n: int, shift: int | None = None):
        self.graph = graph
        self.n = n
        self.basis: list[tuple[int, ...]] = _enumerate_colorings(graph, n)
        self.index = {c: i for i, c in enumerate(self.basis)}
        self.offset = global_shift(graph, n) if shift is None else shift

    def __len__(self):
        return len(self.basis)

    @cached_property
    def gradings(self) -> list[int]:
        off = self.offset
        return [off + local_grade(self.graph, c, self.n) for c in self.basis]

    def state(self, i: int) -> ColoredState:
        return ColoredState(self.graph, self.basis[i])

    def shifted(self, k: int) -> GradedStateModule:
        """C(G){k}."""
        out = GradedStateModule.__new__(GradedStateModule)
        out.graph, out.n, out.basis, out.index = self.graph, self.n, self.basis, self.index
        out.offset = self.offset + k
        return out

    def graded_dimension(self) -> LaurentPolynomial:
        acc: dict[int, int] = {}
        for g in self.gradings:
            acc[g] = acc.get(g, 0) + 1
        return LaurentPolynomial(acc)


def graded_dimension(M: GradedStateModule) -> LaurentPolynomial:
    return M.graded_dimension()
