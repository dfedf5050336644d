"""Smith normal form over the integers: invariant factors and rank.

Unit pivots are eliminated sparsely first (the typical case for cube
differentials); whatever remains is reduced densely, always pivoting on an
entry of least absolute value.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def _from_columns(columns: Sequence[dict[int, int]]) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return rows


def _eliminate_units(rows: dict[int, dict[int, int]]) -> int:
    """Remove unit pivots in place, returning how many were removed."""
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    count = 0
    while True:
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                if v == 1 or v == -1:
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return count
        _, pi, pj = best
        prow = rows.pop(pi)
        u = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            r = rows[i]
            f = r[pj] * u  # u = +-1, so r[pj]/u = r[pj]*u
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        cols[j].add(i)
                    r[j] = nv
                else:
                    if j in r:
                        del r[j]
                        cols[j].discard(i)
            if not r:
                del rows[i]
        del cols[pj]
        for j in prow:
            if j in cols and not cols[j]:
                del cols[j]
        count += 1


def _dense_snf(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        if piv is None:
            break
        _, pi, pj = piv
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        rt, ri = a[t], a[i]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # pivot must divide the rest of the submatrix
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for j in range(t, n):
                    rt[j] += rb[j]
                continue
            # bring a smaller remainder to the pivot position
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                v = a[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, n):
                v = a[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, bi, bj = best
            if bi != t:
                a[t], a[bi] = a[bi], a[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    factors.sort()
    return factors


def invariant_factors(columns: Sequence[dict[int, int]], nrows: int | None = None) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of a sparse column-stored matrix."""
    rows = _from_columns(columns)
    units = _eliminate_units(rows)
    if not rows:
        return [1] * units
    ri = sorted(rows)
    cj = sorted({j for r in rows.values() for j in r})
    cpos = {j: k for k, j in enumerate(cj)}
    dense = [[0] * len(cj) for _ in ri]
    for a, i in enumerate(ri):
        for j, v in rows[i].items():
            dense[a][cpos[j]] = v
    rest = _dense_snf(dense)
    return [1] * units + _normalize(rest)


def _normalize(diag: list[int]) -> list[int]:
    """Turn any diagonal into a divisibility chain with the same product structure."""
    d = [x for x in diag if x]
    changed = True
    while changed:
        changed = False
        d.sort()
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    l = d[i] * d[j] // g
                    d[i], d[j] = g, l
                    changed = True
    return sorted(d)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors and rank of a dense integer matrix given as rows."""
    columns: list[dict[int, int]] = []
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    for j in range(n):
        columns.append({i: matrix[i][j] for i in range(m) if matrix[i][j]})
    f = invariant_factors(columns)
    return f, len(f)


def rank(columns: Sequence[dict[int, int]]) -> int:
    return len(invariant_factors(columns))
