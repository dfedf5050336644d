"""Braid words, their closures, and Markov-move variants.

Strands are numbered 1..s from left to right and oriented upward.  The
closure arcs run around the left side of the braid, so every closed curve
obtained from a resolution turns counterclockwise once per closure arc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_HEADER = re.compile(r"^\s*B(\d+)\s*:(.*)$", re.DOTALL)


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator {x} invalid on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_braid(self)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        """Switch every crossing; the closure is the mirror image."""
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def reverse(self) -> BraidWord:
        """Reversed word; its closure is the closure with all orientations reversed."""
        return BraidWord(self.strands, tuple(reversed(self.letters)))


@dataclass(frozen=True)
class Crossing:
    id: int
    sign: int
    height: int
    columns: tuple[int, int]


@dataclass(frozen=True)
class LinkDiagram:
    source: BraidWord
    crossings: tuple[Crossing, ...]
    writhe: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "writhe", sum(c.sign for c in self.crossings))

    @property
    def strands(self) -> int:
        return self.source.strands

    @property
    def positive(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings if c.sign > 0)

    @property
    def negative(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings if c.sign < 0)

    def __len__(self):
        return len(self.crossings)


def parse_braid(text: str) -> BraidWord:
    """Parse ``B<strands>: i1 i2 ...`` into a :class:`BraidWord`."""
    m = _HEADER.match(text)
    if not m:
        raise BraidParseError(f"expected 'B<strands>: <letters>', got {text!r}")
    strands = int(m.group(1))
    if strands < 1:
        raise BraidParseError("strand count must be positive")
    letters = []
    for token in m.group(2).split():
        try:
            x = int(token)
        except ValueError:
            raise BraidParseError(f"bad token {token!r}") from None
        if x == 0 or abs(x) >= strands:
            raise BraidParseError(
                f"token {token!r}: generator index must satisfy 1 <= |i| < {strands}"
            )
        letters.append(x)
    return BraidWord(strands, tuple(letters))


def format_braid(b: BraidWord) -> str:
    if not b.letters:
        return f"B{b.strands}:"
    return f"B{b.strands}: " + " ".join(str(x) for x in b.letters)


def closure(b: BraidWord) -> LinkDiagram:
    crossings = tuple(
        Crossing(id=h, sign=1 if x > 0 else -1, height=h, columns=(abs(x), abs(x) + 1))
        for h, x in enumerate(b.letters)
    )
    return LinkDiagram(b, crossings)


def rotations(b: BraidWord) -> list[BraidWord]:
    w = b.letters
    return [BraidWord(b.strands, w[i:] + w[:i]) for i in range(max(len(w), 1))]


def conjugates(b: BraidWord) -> list[BraidWord]:
    out = []
    for k in range(1, b.strands):
        for g in (k, -k):
            out.append(BraidWord(b.strands, (g,) + b.letters + (-g,)))
    return out


def stabilizations(b: BraidWord) -> list[BraidWord]:
    s = b.strands
    return [BraidWord(s + 1, b.letters + (s,)), BraidWord(s + 1, b.letters + (-s,))]


def relation_variants(b: BraidWord) -> list[BraidWord]:
    """Apply one braid relation (far commutation or the length-3 relation)."""
    w = b.letters
    out = []
    for i in range(len(w) - 1):
        x, y = w[i], w[i + 1]
        if abs(abs(x) - abs(y)) >= 2:
            out.append(BraidWord(b.strands, w[:i] + (y, x) + w[i + 2 :]))
    for i in range(len(w) - 2):
        x, y, z = w[i : i + 3]
        if x == z and abs(abs(x) - abs(y)) == 1 and (x > 0) == (y > 0):
            out.append(BraidWord(b.strands, w[:i] + (y, x, y) + w[i + 3 :]))
    return out


def markov_variants(b: BraidWord, relations: bool = True) -> list[BraidWord]:
    """Braids whose closures are isotopic to the closure of ``b``.

    Rotations and conjugates realize conjugation, stabilizations realize the
    first Markov move, and relation variants realize the length-3 braid
    relation.  Duplicates are removed, order is deterministic.
    """
    candidates = rotations(b) + conjugates(b) + stabilizations(b)
    if relations:
        candidates += relation_variants(b)
    seen = set()
    out = []
    for v in candidates:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def enumerate_braids(max_crossings: int, max_strands: int):
    """Every braid word with at most ``max_crossings`` letters on 1..max_strands strands.

    Words on s strands that never use generator s-1 are still listed under s;
    the B1 identity is included once.
    """
    from itertools import product

    yield BraidWord(1, ())
    for s in range(2, max_strands + 1):
        gens = [g for k in range(1, s) for g in (k, -k)]
        for length in range(0, max_crossings + 1):
            for w in product(gens, repeat=length):
                yield BraidWord(s, w)
