"""Structure morphisms chi_0 / chi_1 between colored graph spaces and the resolution cube.

Both morphisms act at one crossing ``a``.  Gamma^1 is the resolution where
``a`` is a singular edge E, Gamma^0 the one where it is a pair of parallel
edges.  All colored-path bookkeeping happens in the edge set of Gamma^1:
for chi_0 the parallel pair is treated as the dotted pseudo-vertex (colors
pass straight through it), for chi_1 it is the real singular edge E.

A distinguished circle is a pair of colored paths that leave the two heads
of a source vertex S and arrive at the two legs of a target vertex S'
(S = S' allowed).  Exchanging it swaps the two path colors.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .diagram import LinkDiagram
from .graphspace import GradedStateModule, deg_singular
from .resolution import ResolvedGraph, subsets_in_order
from .statesum import ColoredState


class CubeError(RuntimeError):
    """A face of the resolution cube fails to commute."""

    def __init__(self, cr, a, b, column, detail=""):
        self.cr, self.a, self.b, self.column = cr, a, b, column
        super().__init__(
            f"face (cr={sorted(cr)}, a={a}, b={b}) does not commute at basis element "
            f"{column}{': ' + detail if detail else ''}"
        )


@dataclass(frozen=True)
class MorphismRules:
    """Readings of the side conditions that the construction leaves open.

    endpoint_shift
        "plus_one": a non-anchor source/target must rise by exactly +1
        (+2 when source = target); "any": only the grade check applies.
    traversal
        "zero": a vertex crossed by the circle must have degree 0 and keep
        it; "degree": any degree is allowed as long as it is kept.
    chi1_zero_to_minus
        In the degree-0 case of chi_1, require E to become degree -1.
    loop_terms
        Include the exceptional simple-loop recolorings.
    accumulate
        Coinciding terms add up (coefficient 2, ...) instead of being merged.
    self_circles
        Allow circles whose source and target coincide; when False the
        simple-loop exceptional term is the only source = target contribution.
    """

    endpoint_shift: str = "plus_one"
    traversal: str = "zero"
    chi1_zero_to_minus: bool = False
    loop_terms: bool = True
    accumulate: bool = True
    self_circles: bool = False


DEFAULT_RULES = MorphismRules()


@dataclass(frozen=True)
class DistinguishedCircle:
    source: int  # crossing id of the source vertex
    target: int
    paths: tuple[tuple[int, ...], tuple[int, ...]]  # Gamma^1 edge ids
    colors: tuple[int, int]
    passages: tuple[tuple[int, int], ...] = field(default=())  # (vertex, side) crossed on the way
    pseudo: int | None = None  # parallel crossing treated as a vertex, if any


class _Walker:
    """Vertex/edge incidence of Gamma^1 for walking colored paths."""

    def __init__(self, g1: ResolvedGraph, pseudo: int | None):
        self.g1 = g1
        self.pseudo = pseudo
        self.heads = {E.crossing: E.heads for E in g1.singular_edges}
        self.legs = {E.crossing: E.legs for E in g1.singular_edges}
        self.edge_top: dict[int, tuple[int, int]] = {}
        for E in g1.singular_edges:
            self.edge_top[E.legs[0]] = (E.crossing, 0)
            self.edge_top[E.legs[1]] = (E.crossing, 1)
        self.vertices = tuple(E.crossing for E in g1.singular_edges)

    def arrivals(self, col, S: int, side: int):
        """First arrival at every vertex along the colored circle leaving S's head ``side``.

        Returns {vertex: (leg side, edges, passages)}; the walk stops once it
        returns to S.
        """
        heads, edge_top, pseudo = self.heads, self.edge_top, self.pseudo
        e = heads[S][side]
        x = col[e]
        edges = [e]
        passages: list[tuple[int, int]] = []
        out: dict[int, tuple[int, tuple[int, ...], tuple[tuple[int, int], ...]]] = {}
        for _ in range(4 * len(self.vertices) + 4):
            v, s_in = edge_top[e]
            if v not in out:
                out[v] = (s_in, tuple(edges), tuple(passages))
            if v == S:
                break
            h = heads[v]
            if v == pseudo:
                s_out = s_in
            else:
                s_out = 0 if col[h[0]] == x else 1
            passages.append((v, s_in))
            e = h[s_out]
            edges.append(e)
        return out


def _vertex_ok(walker: _Walker, v: int, col) -> bool:
    l, h = walker.legs[v], walker.heads[v]
    a, b, c, d = col[l[0]], col[l[1]], col[h[0]], col[h[1]]
    return a != b and ((a == c and b == d) or (a == d and b == c))


def _deg(walker: _Walker, v: int, col) -> int:
    l, h = walker.legs[v], walker.heads[v]
    a, b = col[l[0]], col[l[1]]
    if col[h[0]] == a:
        return 1 if a < b else -1
    return 0


def _distinguished(walker: _Walker, col, anchor: int, rules: MorphismRules):
    """Distinguished circles through the anchor vertex, with their exchanged colorings.

    Returns a list of (circle, new coloring).  Conditions enforced here:
    two distinct path colors; the circle does not cross itself (a vertex met
    twice is only tolerated at the anchor); the exchange keeps every real
    vertex valid; vertices crossed once keep their degree; real non-anchor
    endpoints are not positive and shift as the rules demand.
    """
    found = []
    pseudo = walker.pseudo
    for S in walker.vertices:
        h0, h1 = walker.heads[S]
        x, y = col[h0], col[h1]
        if x == y:
            continue
        A = walker.arrivals(col, S, 0)
        B = walker.arrivals(col, S, 1)
        if anchor != S and anchor not in A and anchor not in B:
            continue
        for T in walker.vertices:
            if T == S and not rules.self_circles:
                continue
            if T not in A or T not in B:
                continue
            sa, ea, pa = A[T]
            sb, eb, pb = B[T]
            if sa == sb:
                continue
            if set(ea) & set(eb):
                continue
            passed: dict[int, int] = {}
            for v, _ in pa + pb:
                passed[v] = passed.get(v, 0) + 1
            if any(v in (S, T) for v in passed):
                continue
            if any(k > 1 and v != anchor for v, k in passed.items()):
                continue
            if anchor not in (S, T) and anchor not in passed:
                continue
            new = list(col)
            for e in ea:
                new[e] = y
            for e in eb:
                new[e] = x
            ok = True
            for v in set(passed) | {S, T}:
                if v == pseudo:
                    continue
                if v != anchor and not _vertex_ok(walker, v, new):
                    ok = False
                    break
            if not ok:
                continue
            for v, k in passed.items():
                if v == anchor:
                    continue
                before = _deg(walker, v, col)
                if rules.traversal == "zero" and before != 0:
                    ok = False
                    break
                if _deg(walker, v, new) != before:
                    ok = False
                    break
            if not ok:
                continue
            ends = [S] if S == T else [S, T]
            for v in ends:
                if v == anchor:
                    continue
                before = _deg(walker, v, col)
                if before > 0:
                    ok = False
                    break
                if rules.endpoint_shift == "plus_one":
                    want = 2 if S == T else 1
                    if _deg(walker, v, new) - before != want:
                        ok = False
                        break
            if not ok:
                continue
            circle = DistinguishedCircle(
                S, T, (ea, eb), (x, y), tuple(sorted(set(pa + pb))), pseudo
            )
            found.append((circle, tuple(new)))
    return found


class CrossingMap:
    """chi_0 or chi_1 at crossing ``a`` from C(D(cr)) to C(D(cr + a))."""

    def __init__(
        self,
        diagram: LinkDiagram,
        cr: frozenset[int],
        a: int,
        n: int,
        source: GradedStateModule | None = None,
        target: GradedStateModule | None = None,
        rules: MorphismRules = DEFAULT_RULES,
    ):
        if a in cr:
            raise ValueError(f"crossing {a} already in cr")
        self.diagram, self.cr, self.a, self.n, self.rules = diagram, frozenset(cr), a, n, rules
        self.source = source or GradedStateModule(ResolvedGraph(diagram, cr), n)
        self.target = target or GradedStateModule(ResolvedGraph(diagram, self.cr | {a}), n)
        self.kind = "chi0" if diagram.crossings[a].sign > 0 else "chi1"
        if self.kind == "chi0":
            self.g0, self.g1 = self.source.graph, self.target.graph
            self.m0, self.m1 = self.source, self.target
        else:
            self.g1, self.g0 = self.source.graph, self.target.graph
            self.m1, self.m0 = self.source, self.target
        self.walker = _Walker(self.g1, a if self.kind == "chi0" else None)
        # one representative slot per edge to translate colorings between graphs
        self._g1_of_g0 = [self.g1.slot_edge[e.slots[0]] for e in self.g0.normal_edges]
        self._g0_of_g1 = [self.g0.slot_edge[e.slots[0]] for e in self.g1.normal_edges]
        self.E = self.g1.singular_by_crossing[a]

    # -- translations ------------------------------------------------------
    def _lift(self, col0):
        return tuple(col0[e0] for e0 in self._g0_of_g1)

    def _drop(self, col1):
        return tuple(col1[e1] for e1 in self._g1_of_g0)

    def _emit(self, acc, module, colors, grade):
        j = module.index.get(colors)
        if j is None or module.gradings[j] != grade:
            return
        if self.rules.accumulate:
            acc[j] = acc.get(j, 0) + 1
        else:
            acc[j] = 1

    # -- chi_1: singular E -> parallel ---------------------------------------
    def _chi1(self, i: int) -> dict[int, int]:
        col = self.m1.basis[i]
        gr = self.m1.gradings[i]
        E = self.E
        d = _deg(self.walker, self.a, col)
        acc: dict[int, int] = {}
        if d == -1:
            self._emit(acc, self.m0, self._drop(col), gr)
            return acc
        for circle, new in _distinguished(self.walker, col, self.a, self.rules):
            if not _straight(E, new):
                continue
            if d == 1:
                if self.a in (circle.source, circle.target):
                    continue
            else:
                if self.a not in (circle.source, circle.target) or circle.source == circle.target:
                    continue
                if self.rules.chi1_zero_to_minus and _deg(self.walker, self.a, new) != -1:
                    continue
            self._emit(acc, self.m0, self._drop(new), gr)
        if d == 1 and self.rules.loop_terms:
            base = self._drop(col)
            for side in (0, 1):
                if E.legs[side] != E.heads[side]:
                    continue
                loop0 = self._g0_of_g1[E.legs[side]]
                for c in range(1, self.n + 1):
                    if c == base[loop0]:
                        continue
                    cand = list(base)
                    cand[loop0] = c
                    self._emit(acc, self.m0, tuple(cand), gr)
        return acc

    # -- chi_0: parallel -> singular E -----------------------------------------
    def _chi0(self, i: int) -> dict[int, int]:
        col0 = self.m0.basis[i]
        gr = self.m0.gradings[i]
        E = self.E
        col = self._lift(col0)
        li, lj = col[E.legs[0]], col[E.legs[1]]
        acc: dict[int, int] = {}
        if li < lj:
            self._emit(acc, self.m1, col, gr)
            return acc
        for circle, new in _distinguished(self.walker, col, self.a, self.rules):
            if not _vertex_ok(self.walker, self.a, new):
                continue
            self._emit(acc, self.m1, new, gr)
        if self.rules.loop_terms:
            for side in (0, 1):
                if E.legs[side] != E.heads[side]:
                    continue
                loop = E.legs[side]
                for c in range(1, self.n + 1):
                    if c == col[loop]:
                        continue
                    cand = list(col)
                    cand[loop] = c
                    self._emit(acc, self.m1, tuple(cand), gr)
        return acc

    def column(self, i: int) -> dict[int, int]:
        """Image of source basis element ``i`` as {target index: coefficient}."""
        return self._chi0(i) if self.kind == "chi0" else self._chi1(i)

    def matrix(self) -> list[dict[int, int]]:
        return [self.column(i) for i in range(len(self.source))]


def _straight(E, col) -> bool:
    return col[E.legs[0]] == col[E.heads[0]] and col[E.legs[1]] == col[E.heads[1]]


# --- public single-state API ---------------------------------------------------


def _map_for(state: ColoredState, a: int, n: int, rules: MorphismRules) -> CrossingMap:
    G = state.graph
    D = G.diagram
    if a in G.cr:
        raise ValueError("the morphism starts at the resolution without crossing a")
    return CrossingMap(D, G.cr, a, n, rules=rules)


def chi1(state: ColoredState, a: int, n: int, rules: MorphismRules = DEFAULT_RULES) -> dict:
    """chi_1 at negative crossing ``a`` (singular -> parallel) as {target coloring: coeff}."""
    G = state.graph
    if not G.is_singular(a) or G.diagram.crossings[a].sign > 0:
        raise ValueError(f"crossing {a} is not a singular negative crossing of this resolution")
    f = _map_for(state, a, n, rules)
    col = f.column(f.source.index[state.colors])
    return {f.target.basis[j]: c for j, c in col.items()}


def chi0(state: ColoredState, a: int, n: int, rules: MorphismRules = DEFAULT_RULES) -> dict:
    """chi_0 at positive crossing ``a`` (parallel -> singular) as {target coloring: coeff}."""
    G = state.graph
    if G.is_singular(a) or G.diagram.crossings[a].sign < 0:
        raise ValueError(f"crossing {a} is not a parallel positive crossing of this resolution")
    f = _map_for(state, a, n, rules)
    col = f.column(f.source.index[state.colors])
    return {f.target.basis[j]: c for j, c in col.items()}


def find_distinguished(
    state: ColoredState, anchor: int, rules: MorphismRules = DEFAULT_RULES
) -> list[DistinguishedCircle]:
    """Distinguished circles (or subgraphs, for a parallel anchor) through ``anchor``."""
    G = state.graph
    D = G.diagram
    if G.is_singular(anchor):
        walker = _Walker(G, None)
        col = state.colors
    else:
        g1 = ResolvedGraph(D, G.cr ^ {anchor})
        walker = _Walker(g1, anchor)
        col = tuple(state.colors[G.slot_edge[e.slots[0]]] for e in g1.normal_edges)
    return [c for c, _ in _distinguished(walker, col, anchor, rules)]


def color_exchange(state: ColoredState, circle: DistinguishedCircle) -> ColoredState:
    """Swap the two path colors of ``circle``.

    Around a dotted pseudo-vertex the path edges live in the resolution where
    that crossing is singular, so the result is a state of that graph (a state
    already on that graph is exchanged in place).
    """
    G = state.graph
    if circle.pseudo is None or G.is_singular(circle.pseudo):
        g1, col = G, list(state.colors)
    else:
        g1 = ResolvedGraph(G.diagram, G.cr ^ {circle.pseudo})
        col = [state.colors[G.slot_edge[e.slots[0]]] for e in g1.normal_edges]
    # read the colors off the state so that exchanging twice is the identity
    x, y = col[circle.paths[0][0]], col[circle.paths[1][0]]
    for e in circle.paths[0]:
        col[e] = y
    for e in circle.paths[1]:
        col[e] = x
    return ColoredState(g1, tuple(col))


# --- the cube --------------------------------------------------------------------


class _LazyModules(Mapping):
    """cr -> GradedStateModule, built on first access; iterates in cube order."""

    def __init__(self, diagram: LinkDiagram, n: int):
        self.diagram, self.n = diagram, n
        self._keys = list(subsets_in_order(len(diagram.crossings)))
        self._built: dict[frozenset[int], GradedStateModule] = {}

    def __getitem__(self, cr) -> GradedStateModule:
        cr = frozenset(cr)
        M = self._built.get(cr)
        if M is None:
            if not all(0 <= a < len(self.diagram.crossings) for a in cr):
                raise KeyError(cr)
            M = self._built[cr] = GradedStateModule(ResolvedGraph(self.diagram, cr), self.n)
        return M

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)


class ResolutionCube:
    """Commutative cube of colored graph spaces over the crossings of ``D``."""

    def __init__(self, diagram: LinkDiagram, n: int, rules: MorphismRules = DEFAULT_RULES):
        self.diagram, self.n, self.rules = diagram, n, rules
        self.crossings = tuple(range(len(diagram.crossings)))
        self.modules = _LazyModules(diagram, n)
        self._maps: dict[tuple[frozenset[int], int], CrossingMap] = {}
        self._columns: dict[tuple[frozenset[int], int], dict[int, dict[int, int]]] = {}

    def _crossing_map(self, cr: frozenset[int], a: int) -> CrossingMap:
        key = (cr, a)
        f = self._maps.get(key)
        if f is None:
            f = self._maps[key] = CrossingMap(
                self.diagram, cr, a, self.n, self.modules[cr], self.modules[cr | {a}], self.rules
            )
            self._columns[key] = {}
        return f

    def edge_column(self, cr: frozenset[int], a: int, i: int) -> dict[int, int]:
        """Column ``i`` of the edge map (cr, a), computed on first use."""
        f = self._crossing_map(cr, a)
        cols = self._columns[(cr, a)]
        col = cols.get(i)
        if col is None:
            col = cols[i] = f.column(i)
        return col

    def edge_map(self, cr: frozenset[int], a: int) -> list[dict[int, int]]:
        return [self.edge_column(cr, a, i) for i in range(len(self.modules[cr]))]

    def degree_of(self, cr: frozenset[int]) -> int:
        return self.modules[cr].graph.cohomological_degree

    def faces(self):
        for cr in self.modules:
            free = [a for a in self.crossings if a not in cr]
            for i, a in enumerate(free):
                for b in free[i + 1 :]:
                    yield cr, a, b

    def face_defect(self, cr, a, b):
        """First basis element where xi_b(Xa) xi_a(X) != xi_a(Xb) xi_b(X), or None."""
        cra, crb = cr | {a}, cr | {b}
        for i in range(len(self.modules[cr])):
            lhs = _apply_lazy(lambda k: self.edge_column(cra, b, k), self.edge_column(cr, a, i))
            rhs = _apply_lazy(lambda k: self.edge_column(crb, a, k), self.edge_column(cr, b, i))
            if lhs != rhs:
                return i, lhs, rhs
        return None

    def check_commutes(self, raise_on_failure: bool = False):
        failures = []
        for cr, a, b in self.faces():
            defect = self.face_defect(cr, a, b)
            if defect is not None:
                failures.append((cr, a, b, defect))
                if raise_on_failure:
                    i, lhs, rhs = defect
                    col = self.modules[cr].basis[i]
                    raise CubeError(cr, a, b, col, f"{lhs} != {rhs}")
        return failures


def _apply_lazy(column, vec: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, c in vec.items():
        for j, v in column(i).items():
            out[j] = out.get(j, 0) + c * v
    return {j: v for j, v in out.items() if v}


def build_cube(
    diagram: LinkDiagram, n: int, rules: MorphismRules = DEFAULT_RULES, verify: bool = True
) -> ResolutionCube:
    cube = ResolutionCube(diagram, n, rules)
    if verify:
        cube.check_commutes(raise_on_failure=True)
    return cube
