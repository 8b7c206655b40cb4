"""Partitions, standard tableaux and Specht modules in Young's seminormal form.

Matrices are lists of rows of ``Fraction``.  Permutations follow the
conventions of :mod:`loopbrauer.diagrams` (0-based one-line tuples,
``perm_compose(p, q)`` applies ``q`` first) and ``perm_action`` is a left
representation: ``rho(p o q) = rho(p) rho(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .diagrams import perm_compose, perm_inverse, transposition


class InvalidShapes(ValueError):
    pass


Partition = tuple  # weakly decreasing tuple of positive ints; () is the empty partition


def as_partition(parts) -> Partition:
    if isinstance(parts, str):
        s = parts.strip().strip("()[]")
        parts = [int(p) for p in s.split(",") if p.strip()] if s else []
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    return parts


@lru_cache(maxsize=None)
def _partitions(m: int, largest: int) -> tuple:
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(m: int) -> list:
    """Partitions of ``m`` in reverse-lexicographic order; ``[()]`` for ``m = 0``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return list(_partitions(m, m))


def cells(lam: Partition):
    """Boxes ``(row, col)`` of the Ferrers diagram, 0-based."""
    return [(r, c) for r, length in enumerate(lam) for c in range(length)]


def contents_sum(lam: Partition) -> int:
    return sum(c - r for r, c in cells(lam))


def corners(lam: Partition):
    """``(inner, outer)``: partitions obtained by removing / adding one box."""
    lam = tuple(lam)
    inner, outer = [], []
    for r in range(len(lam)):
        if r == len(lam) - 1 or lam[r] > lam[r + 1]:
            mu = list(lam)
            mu[r] -= 1
            inner.append(tuple(p for p in mu if p))
    for r in range(len(lam) + 1):
        if r == 0 or lam[r - 1] > (lam[r] if r < len(lam) else 0):
            mu = list(lam) + [0]
            mu[r] += 1
            outer.append(tuple(p for p in mu if p))
    return inner, outer


def hook_length_dim(lam: Partition) -> int:
    m = sum(lam)
    conj = [sum(1 for p in lam if p > c) for c in range(lam[0])] if lam else []
    hooks = 1
    for r, c in cells(lam):
        hooks *= (lam[r] - c - 1) + (conj[c] - r - 1) + 1
    return math.factorial(m) // hooks


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple:
    """Standard tableaux as tuples ``pos`` with ``pos[k]`` the box of entry ``k`` (0-based).

    Ordered by the last-letter order: recursively by the row of the largest
    entry, top rows first.
    """
    lam = tuple(lam)
    m = sum(lam)
    if m == 0:
        return ((),)
    out = []
    for r in range(len(lam)):
        if r == len(lam) - 1 or lam[r] > lam[r + 1]:
            mu = list(lam)
            mu[r] -= 1
            box = (r, mu[r])
            for sub in standard_tableaux(tuple(p for p in mu if p)):
                out.append(sub + (box,))
    return tuple(out)


@dataclass(frozen=True)
class SpechtRep:
    lam: Partition
    tableaux: tuple
    gen_matrices: tuple  # gen_matrices[i] represents s_{i+1} = (i, i+1), 0-based
    index: dict = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.tableaux)

    @property
    def degree(self) -> int:
        return sum(self.lam)


def _content(box) -> int:
    return box[1] - box[0]


@lru_cache(maxsize=None)
def specht(lam) -> SpechtRep:
    """Young's seminormal form: exact rational matrices of the adjacent transpositions.

    For a tableau ``T`` with axial distance ``d = c(i+1) - c(i)`` the
    generator ``s_i`` acts by ``1/d`` on the diagonal; if ``s_i T`` is
    standard the off-diagonal pair is ``1`` (for ``d > 0``) and
    ``1 - 1/d^2`` (for ``d < 0``).
    """
    lam = as_partition(lam)
    tabs = standard_tableaux(lam)
    index = {T: k for k, T in enumerate(tabs)}
    m = sum(lam)
    f = len(tabs)
    mats = []
    for i in range(m - 1):
        M = [[Fraction(0)] * f for _ in range(f)]
        for col, T in enumerate(tabs):
            d = _content(T[i + 1]) - _content(T[i])
            M[col][col] = Fraction(1, d)
            if abs(d) == 1:
                continue
            swapped = list(T)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            row = index[tuple(swapped)]
            M[row][col] = Fraction(1) if d > 0 else 1 - Fraction(1, d * d)
        mats.append(tuple(tuple(r) for r in M))
    return SpechtRep(lam, tabs, tuple(mats), index)


# -- exact matrix helpers ---------------------------------------------------

def mat_identity(k: int):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([sum((row[k] * B[k][j] for k in range(inner) if row[k]), Fraction(0))
                    for j in range(cols)])
    return out


def mat_vec(A, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_eq(A, B) -> bool:
    return [list(r) for r in A] == [list(r) for r in B]


def trace(A):
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def reduced_word(p: Sequence[int]) -> list:
    """Indices ``i`` with ``p = s_{i_1} o s_{i_2} o ...`` (0-based, bubble sort)."""
    arr = list(p)
    word = []
    # peel adjacent swaps off the right: p = p' o s_i
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i)
                changed = True
    return word[::-1]


def perm_action(rep: SpechtRep, p: Sequence[int]):
    """Matrix of ``p`` on the Specht module; ``p`` may be shorter than ``|lam|``."""
    m = rep.degree
    p = tuple(p) + tuple(range(len(p), m))
    if len(p) != m:
        raise ValueError(f"permutation of {len(p)} points on S^{rep.lam} of degree {m}")
    M = mat_identity(rep.dim)
    for i in reduced_word(p):
        M = mat_mul(M, rep.gen_matrices[i])
    return M


def transposition_class_sum(rep: SpechtRep):
    m = rep.degree
    total = [[Fraction(0)] * rep.dim for _ in range(rep.dim)]
    for i in range(m):
        for j in range(i + 1, m):
            total = mat_add(total, perm_action(rep, transposition(i, j, m)))
    return total


# -- characters (independent Murnaghan-Nakayama oracle) ---------------------

def cycle_type(p: Sequence[int]) -> tuple:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        k, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def _beta_set(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return [lam[i] + (length - 1 - i) for i in range(length)]


@lru_cache(maxsize=None)
def mn_character(lam: Partition, rho: tuple) -> int:
    """chi^lam at cycle type ``rho`` by rim-hook removal on beta-numbers."""
    lam = tuple(lam)
    if not rho:
        return 1 if sum(lam) == 0 else 0
    k, rest = rho[0], rho[1:]
    length = len(lam) + k
    beta = _beta_set(lam, length)
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and (b - k) not in bset:
            sign = (-1) ** sum(1 for c in beta if b - k < c < b)
            new = sorted((bset - {b}) | {b - k}, reverse=True)
            mu = tuple(p for p in (new[i] - (length - 1 - i) for i in range(length)) if p)
            total += sign * mn_character(mu, rest)
    return total


# -- branching and induction ------------------------------------------------

def branch_restrict(lam) -> list:
    lam = as_partition(lam)
    inner, _ = corners(lam)
    return inner


def branch_induce(lam) -> list:
    lam = as_partition(lam)
    _, outer = corners(lam)
    return outer


def tau(j: int, m: int) -> tuple:
    """Coset representative ``tau_j = (j, m)`` of ``S_m / S_{m-1}``, 1-based ``j``; ``tau_m = 1``."""
    if j == m:
        return tuple(range(m))
    return transposition(j - 1, m - 1, m)


def induced_action(rep: SpechtRep, sigma: Sequence[int], w, j: int):
    """Action of ``sigma`` in ``S_m`` on ``(w, j)`` in ``ind_{S_{m-1}}^{S_m} S^lam``.

    ``rep`` is ``S^lam`` with ``|lam| = m - 1``.  Returns ``(vector, s)`` with
    ``s`` the unique index such that ``sigma tau_j`` lies in ``tau_s S_{m-1}``.
    """
    m = rep.degree + 1
    sigma = tuple(sigma)
    if len(sigma) != m:
        raise ValueError(f"sigma must lie in S_{m}")
    if not 1 <= j <= m:
        raise ValueError(f"copy index {j} outside 1..{m}")
    s = sigma[tau(j, m)[m - 1]] + 1
    inner = perm_compose(perm_inverse(tau(s, m)), perm_compose(sigma, tau(j, m)))
    assert inner[m - 1] == m - 1
    return mat_vec(perm_action(rep, inner[: m - 1]), list(w)), s


def induced_matrix(rep: SpechtRep, sigma: Sequence[int]):
    """Full matrix of ``sigma`` on the induced module, basis ordered by (copy j, tableau)."""
    m = rep.degree + 1
    f = rep.dim
    M = [[Fraction(0)] * (m * f) for _ in range(m * f)]
    for j in range(1, m + 1):
        for k in range(f):
            e = [Fraction(int(r == k)) for r in range(f)]
            vec, s = induced_action(rep, sigma, e, j)
            for r, val in enumerate(vec):
                if val:
                    M[(s - 1) * f + r][(j - 1) * f + k] = val
    return M
