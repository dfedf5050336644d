"""Exact Laurent polynomials in a single variable q with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

_TERM = re.compile(r"^\s*([+-]?\d+)\s*q\^([+-]?\d+)\s*$")


class LaurentPolynomial:
    """Immutable mapping exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            acc[int(exp)] = acc.get(int(exp), 0) + int(coeff)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPolynomial:
        return cls({exp: coeff})

    @classmethod
    def quantum_integer(cls, n: int) -> LaurentPolynomial:
        """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
        return cls({n - 1 - 2 * k: 1 for k in range(n)})

    @classmethod
    def parse(cls, text: str) -> LaurentPolynomial:
        text = text.strip()
        if text == "0":
            return cls()
        terms = []
        for chunk in text.split(" + "):
            m = _TERM.match(chunk)
            if not m:
                raise ValueError(f"malformed term {chunk!r}")
            terms.append((int(m.group(2)), int(m.group(1))))
        return cls(terms)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        exps = list(self._terms)
        return exps[0], exps[-1]

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by q^k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def bar(self) -> LaurentPolynomial:
        """Substitute q -> q^-1."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, q):
        return sum(c * q**e for e, c in self._terms.items())

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c} q^{e}" for e, c in self._terms.items())

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"
