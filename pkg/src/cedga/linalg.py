"""Exact dense linear algebra over a :class:`~cedga.fields.Field`.

Rank over F_p goes through the compiled kernel in ``cedga._ext._rank``
when it is importable, else through the pure-Python fallback.  Set
``CEDGA_PURE_PYTHON=1`` to force the fallback.  Over Q, rank uses
fraction-free (Bareiss) elimination on integer rows.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .fields import Field
from ._ext import _rank_py

BACKEND = "python"
_rank_kernel = _rank_py.rank_mod_p
if not os.environ.get("CEDGA_PURE_PYTHON"):
    try:
        from ._ext import _rank as _compiled  # type: ignore[attr-defined]

        _rank_kernel = _compiled.rank_mod_p
        BACKEND = "cython"
    except ImportError:
        pass


def _bareiss_rank(rows: list[list[int]]) -> int:
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    if not m:
        return 0
    n = len(A[0])
    prev = 1
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if A[i][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        pv = A[row][col]
        for i in range(row + 1, m):
            ai = A[i]
            f = ai[col]
            ar = A[row]
            A[i] = [(pv * ai[j] - f * ar[j]) // prev for j in range(n)]
        prev = pv
        row += 1
        if row == m:
            break
    return row


def rank(M, F: Field) -> int:
    """Rank of the matrix ``M`` (a list of rows) over ``F``."""
    if not M or not len(M[0]):
        return 0
    if F.char == 0:
        rows = []
        for r in M:
            den = math.lcm(*(Fraction(x).denominator for x in r))
            rows.append([int(Fraction(x) * den) for x in r])
        return _bareiss_rank(rows)
    return _rank_kernel(M, F.char)


def rref(M, F: Field):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    A = [[F.reduce(F(x)) for x in r] for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if A[i][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = F.inv(A[row][col])
        A[row] = [F.reduce(x * inv) for x in A[row]]
        for i in range(m):
            if i != row and A[i][col]:
                f = A[i][col]
                A[i] = [F.reduce(a - f * b) for a, b in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
    return A[:row], pivots


def nullspace(M, F: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel {v : M v = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[F.one if j == i else F.zero for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(M, F)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for fj in free:
        v = [F.zero] * ncols
        v[fj] = F.one
        for r, pc in zip(R, piv):
            v[pc] = F.neg(r[fj])
        basis.append(v)
    return basis


def solve(M, b, F: Field):
    """One solution x of M x = b, or None."""
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    n = len(M[0]) if M else 0
    R, piv = rref(aug, F)
    if n in piv:
        return None
    x = [F.zero] * n
    for r, pc in zip(R, piv):
        x[pc] = r[n]
    return x
