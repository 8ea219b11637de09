"""Exact rational linear algebra (rank, square solves, affine dimension)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [Fraction(v) for v in r]
        den = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * den) for v in r])
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination over the integers."""
    m = [r for r in _integer_rows(rows) if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        row_r = m[r]
        for i in range(r + 1, len(m)):
            row = m[i]
            a = row[c]
            m[i] = [(pv * x - a * y) // prev for x, y in zip(row, row_r)]
        prev = pv
        r += 1
        if r == len(m):
            break
    return r


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(matrix)
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return None
        m[c], m[pivot] = m[pivot], m[c]
        pv = m[c][c]
        m[c] = [a / pv for a in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])
