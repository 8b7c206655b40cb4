"""Exact linear algebra over the rationals via fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = math.lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence]):
    """Row echelon form over the integers.

    Returns ``(echelon_rows, pivot_columns)``.  Every division performed is
    exact; a non-zero remainder would indicate a bug and raises.
    """
    M = _integer_rows(rows)
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        prow = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            a = row[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row[j] - a * prow[j], prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                row[j] = q
            row[c] = 0
        # rows above the pivot row that were skipped keep their scale; keep
        # ``prev`` consistent with the classic algorithm
        prev = piv
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of ``{v : A v = 0}`` as integer-scaled Fraction vectors."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    E, pivots = bareiss_echelon(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((E[r][j] * x[j] for j in range(pc + 1, ncols) if E[r][j] and x[j]),
                    Fraction(0))
            x[pc] = -s / E[r][pc]
        den = math.lcm(*(v.denominator for v in x))
        basis.append([v * den for v in x])
    return basis


def mat_times_cols(A: Sequence[Sequence], cols: Sequence[Sequence]) -> list:
    """Rows of ``A @ K`` where ``K`` has the given column vectors."""
    return [[sum((a * k[j] for j, a in enumerate(row) if a and k[j]), Fraction(0))
             for k in cols] for row in A]


def joint_kernel(matrices: Iterable[Sequence[Sequence]], dim: int) -> list:
    """Basis of the intersection of the kernels of ``matrices`` (all ``? x dim``).

    The kernel is narrowed one matrix at a time: with the current basis as
    the columns of ``K`` the next basis is ``K N`` for ``N`` spanning the
    kernel of ``A K``.
    """
    K = [[Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
    for A in matrices:
        if not K:
            break
        AK = mat_times_cols(A, K)
        if all(v == 0 for row in AK for v in row):
            continue
        N = nullspace(AK, len(K))
        K = [[sum((nv * K[c][i] for c, nv in enumerate(vec) if nv), Fraction(0))
              for i in range(dim)] for vec in N]
        K = [_primitive(v) for v in K]
    return K


def _primitive(v: list) -> list:
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) or 1
    return [Fraction(x // g) for x in ints]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    return rank(list(vectors) + [list(v)]) == rank(vectors) if vectors else all(x == 0 for x in v)
