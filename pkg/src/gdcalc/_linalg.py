"""Dense exact linear algebra over the rationals.

Small private helper used by the primitive search and the order-by-order
solver: Gaussian elimination with deterministic pivoting (first row with a
nonzero entry in the current column), free variables pinned to zero, and an
explicit consistency verdict.  Sizes stay in the hundreds, so dense Fraction
arithmetic is the simplest exact choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

__all__ = ["LinearSolution", "gaussian_solve"]


@dataclass(frozen=True)
class LinearSolution:
    consistent: bool
    x: List[Fraction]
    rank: int
    residual: List[Fraction]


def gaussian_solve(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    ncols: Optional[int] = None,
) -> LinearSolution:
    """Solve rows @ x = rhs exactly.

    Returns the particular solution with every free variable set to zero.
    When the system is inconsistent, ``consistent`` is False and ``x`` still
    holds the least-committal candidate obtained by ignoring the violated
    equations, with the nonzero residual ``rhs - rows @ x`` reported.
    ``ncols`` only needs to be passed when the system has no equations.
    """
    m = len(rows)
    if len(rhs) != m:
        raise ValueError("matrix/right-hand-side size mismatch")
    a = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    if ncols is None:
        ncols = len(a[0]) if m else 0
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")

    pivot_cols: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        b[r] = b[r] * inv
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
                b[i] = b[i] - f * b[r]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break

    consistent = all(b[i] == 0 for i in range(r, m))
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivot_cols):
        x[col] = b[i]

    residual = [
        rv - sum((rw[j] * x[j] for j in range(ncols) if x[j] != 0), Fraction(0))
        for rw, rv in zip(rows, rhs)
    ]
    return LinearSolution(consistent=consistent, x=x, rank=r, residual=residual)
