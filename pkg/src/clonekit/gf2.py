"""Linear algebra over GF(2) with rows packed into Python ints.

A row is an int whose bit ``j`` is the coefficient of unknown ``j``; the
right-hand side is kept in a separate bit so that row operations stay a
single XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Solution:
    particular: int          # bit j = value of unknown j
    nullspace: tuple[int, ...]
    rank: int


def _eliminate(rows: Sequence[int], rhs: Sequence[int], n: int) -> tuple[list[tuple[int, int]], list[int], bool]:
    """Reduced row echelon form; returns (pivot rows, pivot columns, consistent)."""
    work = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    cols: list[int] = []
    for col in range(n):
        bit = 1 << col
        hit = next((i for i, (r, _) in enumerate(work) if r & bit), None)
        if hit is None:
            continue
        pr, pb = work.pop(hit)
        work = [(r ^ pr, b ^ pb) if r & bit else (r, b) for r, b in work]
        pivots = [(r ^ pr, b ^ pb) if r & bit else (r, b) for r, b in pivots]
        pivots.append((pr, pb))
        cols.append(col)
    consistent = all(b == 0 for r, b in work if r == 0)
    return pivots, cols, consistent


def rank(rows: Sequence[int], n: int) -> int:
    return len(_eliminate(rows, [0] * len(rows), n)[1])


def solve(rows: Sequence[int], rhs: Sequence[int], n: int) -> Solution | None:
    """All solutions of ``rows · a = rhs``: a particular one plus a nullspace basis.

    Returns ``None`` when the system is inconsistent.
    """
    pivots, cols, ok = _eliminate(rows, rhs, n)
    if not ok:
        return None
    particular = 0
    for (r, b), c in zip(pivots, cols):
        if b:
            particular |= 1 << c
    free = [c for c in range(n) if c not in cols]
    basis = []
    for f in free:
        v = 1 << f
        for (r, _), c in zip(pivots, cols):
            if r >> f & 1:
                v |= 1 << c
        basis.append(v)
    return Solution(particular, tuple(basis), len(cols))


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1
