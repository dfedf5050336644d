"""End-to-end pipeline: braid closure -> cube -> complex -> homology."""

from __future__ import annotations

from .cube import ChainComplex, CommutativeCube, skew_twist, total_complex
from .diagram import BraidWord, LinkDiagram, closure
from .homology import BigradedHomology, homology_of
from .morphisms import DEFAULT_RULES, MorphismRules, ResolutionCube


def commutative_cube(cube: ResolutionCube) -> CommutativeCube:
    gradings = {cr: M.gradings for cr, M in cube.modules.items()}
    maps = {}
    for cr in cube.modules:
        for a in cube.crossings:
            if a not in cr:
                maps[(cr, a)] = cube.edge_map(cr, a)
    return CommutativeCube(cube.crossings, gradings, maps)


def link_complex(
    D: LinkDiagram, n: int, rules: MorphismRules = DEFAULT_RULES, check_faces: bool = False
) -> ChainComplex:
    cube = ResolutionCube(D, n, rules)
    V = commutative_cube(cube)
    W = skew_twist(V, check=check_faces)
    return total_complex(W, cube.degree_of)


def link_homology(
    b: BraidWord | LinkDiagram, n: int, rules: MorphismRules = DEFAULT_RULES
) -> BigradedHomology:
    D = closure(b) if isinstance(b, BraidWord) else b
    return homology_of(link_complex(D, n, rules))
