"""Partial 1-factor diagrams and their composition.

A diagram on ``n`` strands is stored as a partner involution on the endpoint
indices ``0..2n-1``: top vertices ``1..n`` are ``0..n-1`` and bottom vertices
``1'..n'`` are ``n..2n-1``.  A fixed point is an isolated vertex, drawn with
a loop.

Permutations are 0-based one-line tuples ``p`` with ``p[i]`` the image of
``i``.  ``perm_compose(p, q)`` is the function composite ``p o q`` (apply
``q`` first).  The permutation diagram of ``p`` joins bottom ``i'`` to top
``p(i)``, which makes ``D(p) D(q) = D(p o q)``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence


class StrandMismatch(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class InvalidT(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class BadBottomRow(ValueError):
    pass


class DiagramParseError(ValueError):
    pass


FAMILIES = ("A", "L", "S")


@dataclass(frozen=True, order=True)
class Diagram:
    n: int
    partner: tuple

    def __post_init__(self):
        p = self.partner
        if len(p) != 2 * self.n:
            raise ValueError(f"partner array has length {len(p)}, expected {2 * self.n}")
        for e, f in enumerate(p):
            if not 0 <= f < 2 * self.n or p[f] != e:
                raise ValueError(f"partner array {p} is not an involution")

    # -- row queries ---------------------------------------------------
    def is_top(self, e: int) -> bool:
        return e < self.n

    def is_loop(self, e: int) -> bool:
        return self.partner[e] == e

    def is_vertical(self, e: int) -> bool:
        f = self.partner[e]
        return f != e and (e < self.n) != (f < self.n)

    def is_horizontal(self, e: int) -> bool:
        f = self.partner[e]
        return f != e and (e < self.n) == (f < self.n)

    @property
    def rank(self) -> int:
        return rank(self)

    def verticals(self) -> list:
        """``(top, bottom)`` index pairs of the vertical arcs, by top vertex."""
        n = self.n
        return [(i, self.partner[i] - n) for i in range(n) if self.partner[i] >= n]

    def top_row(self) -> tuple:
        """Top row pattern: partner within the row, ``'|'`` for a vertical."""
        n = self.n
        return tuple("|" if self.partner[i] >= n else self.partner[i] for i in range(n))

    def bottom_row(self) -> tuple:
        n = self.n
        return tuple("|" if self.partner[n + i] < n else self.partner[n + i] - n
                     for i in range(n))

    def has_horizontal(self) -> bool:
        return any(self.is_horizontal(e) for e in range(2 * self.n))

    def has_loop(self) -> bool:
        return any(self.partner[e] == e for e in range(2 * self.n))

    def in_family(self, family: str) -> bool:
        if family == "A":
            return True
        if family == "L":
            return not self.has_horizontal()
        if family == "S":
            return self.rank == self.n
        raise ValueError(f"unknown family {family!r}")

    # -- text / json ---------------------------------------------------
    def to_text(self) -> str:
        return f"{self.n}; " + " ".join(str(p) for p in self.partner)

    @classmethod
    def from_text(cls, text: str) -> "Diagram":
        try:
            head, _, body = text.partition(";")
            n = int(head)
            partner = tuple(int(tok) for tok in body.split())
            return cls(n, partner)
        except (ValueError, TypeError) as exc:
            raise DiagramParseError(f"cannot parse diagram {text!r}: {exc}") from exc

    def to_json(self) -> list:
        return list(self.partner)

    @classmethod
    def from_json(cls, data) -> "Diagram":
        if isinstance(data, str):
            data = json.loads(data)
        data = tuple(int(v) for v in data)
        if len(data) % 2:
            raise DiagramParseError("partner array must have even length")
        return cls(len(data) // 2, data)

    def ascii(self) -> str:
        """Two-line rendering: ``o`` loop, ``|k`` vertical to k', letters for arcs."""
        def row(idx):
            cells, tags = [], {}
            for e in idx:
                f = self.partner[e]
                if f == e:
                    cells.append("o")
                elif (e < self.n) != (f < self.n):
                    cells.append(f"|{(f % self.n) + 1}")
                else:
                    key = frozenset((e, f))
                    tags.setdefault(key, chr(ord("a") + len(tags)))
                    cells.append(tags[key])
            return " ".join(c.rjust(3) for c in cells)
        return row(range(self.n)) + "\n" + row(range(self.n, 2 * self.n))

    def __str__(self):
        return self.to_text()


class ComposeResult(NamedTuple):
    diagram: Diagram
    loops_total: int
    loops_cycles: int
    loops_looplines: int


def compose(a: Diagram, b: Diagram) -> ComposeResult:
    """Stack ``a`` above ``b`` and trace the merged graph.

    Returns the induced diagram on top(a) and bot(b), the number of inner
    components, and their split into cycles and loop-ended lines.
    """
    if a.n != b.n:
        raise StrandMismatch(f"cannot compose diagrams on {a.n} and {b.n} strands")
    n = a.n
    # nodes: 0..n-1 top(a), n..2n-1 middle, 2n..3n-1 bot(b)
    adj = [[] for _ in range(3 * n)]
    pa, pb = a.partner, b.partner
    for e in range(2 * n):
        f = pa[e]
        if f > e:
            adj[e].append(f)
            adj[f].append(e)
        f = pb[e]
        if f > e:
            adj[e + n].append(f + n)
            adj[f + n].append(e + n)

    out = list(range(2 * n))
    seen = [False] * (3 * n)

    def walk(start):
        prev, cur = -1, start
        seen[cur] = True
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                return cur
            prev, cur = cur, nxt[0]
            seen[cur] = True

    for v in itertools.chain(range(n), range(2 * n, 3 * n)):
        if seen[v]:
            continue
        end = walk(v)
        if end == v:
            continue
        if end < n or end >= 2 * n:
            i = v if v < n else v - n
            j = end if end < n else end - n
            out[i], out[j] = j, i
        # a middle dead end leaves v isolated, already a fixed point in ``out``

    cycles = lines = 0
    for v in range(n, 2 * n):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        if all(len(adj[u]) == 2 for u in comp):
            cycles += 1
        else:
            lines += 1
    return ComposeResult(Diagram(n, tuple(out)), cycles + lines, cycles, lines)


def star(a: Diagram) -> Diagram:
    n = a.n

    def flip(e):
        return e + n if e < n else e - n

    partner = [0] * (2 * n)
    for e in range(2 * n):
        partner[flip(e)] = flip(a.partner[e])
    return Diagram(n, tuple(partner))


def embed(a: Diagram) -> Diagram:
    """Add the strand ``(n+1, (n+1)')``."""
    n = a.n

    def shift(e):
        return e if e < n else e + 1

    partner = [0] * (2 * n + 2)
    for e in range(2 * n):
        partner[shift(e)] = shift(a.partner[e])
    partner[n] = 2 * n + 1
    partner[2 * n + 1] = n
    return Diagram(n + 1, tuple(partner))


def rank(a: Diagram) -> int:
    n = a.n
    return sum(1 for i in range(n) if a.partner[i] >= n)


def _from_arcs(n: int, arcs) -> Diagram:
    partner = list(range(2 * n))
    for e, f in arcs:
        partner[e], partner[f] = f, e
    return Diagram(n, tuple(partner))


def identity(n: int) -> Diagram:
    return _from_arcs(n, [(i, n + i) for i in range(n)])


def generator(kind: str, i: int, n: int) -> Diagram:
    """The 1-based generators ``e_i``, ``u_i`` and ``g_i`` on ``n`` strands."""
    if kind in ("e", "g"):
        if not 1 <= i <= n - 1:
            raise IndexOutOfRange(f"{kind}_{i} needs 1 <= i <= n-1 (n={n})")
    elif kind == "u":
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"u_{i} needs 1 <= i <= n (n={n})")
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    k = i - 1
    if kind == "e":
        arcs = [(j, n + j) for j in range(n) if j not in (k, k + 1)]
        arcs += [(k, k + 1), (n + k, n + k + 1)]
    elif kind == "g":
        arcs = [(j, n + j) for j in range(n) if j not in (k, k + 1)]
        arcs += [(k, n + k + 1), (k + 1, n + k)]
    else:
        arcs = [(j, n + j) for j in range(n) if j != k]
    return _from_arcs(n, arcs)


def u_nt(n: int, t: int) -> Diagram:
    """Straight verticals on ``1..n-t``; loops on the last ``t`` top and bottom vertices."""
    if not 0 <= t <= n:
        raise IndexOutOfRange(f"u_(n,t) needs 0 <= t <= n (n={n}, t={t})")
    return _from_arcs(n, [(j, n + j) for j in range(n - t)])


def v_ij(i: int, j: int, n: int) -> Diagram:
    """Top arc ``(i, j)``, loops at ``i', j'``, straight elsewhere (1-based)."""
    i, j = i - 1, j - 1
    arcs = [(k, n + k) for k in range(n) if k not in (i, j)] + [(i, j)]
    return _from_arcs(n, arcs)


def h_ij(i: int, j: int, n: int) -> Diagram:
    """Arcs ``(i, j)`` and ``(i', j')``, straight elsewhere (1-based)."""
    i, j = i - 1, j - 1
    arcs = [(k, n + k) for k in range(n) if k not in (i, j)] + [(i, j), (n + i, n + j)]
    return _from_arcs(n, arcs)


# -- permutations ---------------------------------------------------------

def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``p o q``: apply ``q`` first, then ``p``."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_then(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Apply ``p`` first, then ``q``."""
    return perm_compose(q, p)


def perm_inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def transposition(i: int, j: int, m: int) -> tuple:
    """0-based transposition of ``i`` and ``j`` in ``S_m``."""
    p = list(range(m))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def perm_diagram(p: Sequence[int], n: int | None = None) -> Diagram:
    """Diagram of ``p`` joining bottom ``i'`` to top ``p(i)``.

    If ``n`` exceeds ``len(p)`` the permutation acts on the first strands and
    the rest are straight.
    """
    m = len(p)
    n = m if n is None else n
    arcs = [(p[i], n + i) for i in range(m)] + [(k, n + k) for k in range(m, n)]
    return _from_arcs(n, arcs)


def diagram_perm(d: Diagram) -> tuple:
    """Inverse of :func:`perm_diagram` for a diagram of full rank."""
    if d.rank != d.n:
        raise RankMismatch("not a permutation diagram")
    n = d.n
    return tuple(d.partner[n + i] for i in range(n))


# -- enumeration ----------------------------------------------------------

def _involutions(points: list) -> Iterator[dict]:
    if not points:
        yield {}
        return
    first, rest = points[0], points[1:]
    for sub in _involutions(rest):
        sub = dict(sub)
        sub[first] = first
        yield sub
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for sub in _involutions(remaining):
            sub = dict(sub)
            sub[first] = other
            sub[other] = first
            yield sub


@lru_cache(maxsize=None)
def _enumerate_cached(family: str, n: int) -> tuple:
    out = []
    for inv in _involutions(list(range(2 * n))):
        d = Diagram(n, tuple(inv[e] for e in range(2 * n)))
        if d.in_family(family):
            out.append(d)
    out.sort(key=lambda d: d.partner)
    return tuple(out)


def enumerate_diagrams(family: str, n: int) -> list:
    """All diagrams of family ``A``, ``L`` or ``S`` in canonical (lexicographic) order."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if family == "S":
        out = [perm_diagram(p) for p in itertools.permutations(range(n))]
        return sorted(out, key=lambda d: d.partner)
    return list(_enumerate_cached(family, n))


def diagrams_of_rank(family: str, n: int, m: int) -> list:
    return [d for d in enumerate_diagrams(family, n) if d.rank == m]


def dimension_formula(family: str, n: int) -> int:
    """Closed-form count of the diagram basis."""
    if family == "A":
        total = 0
        for j in range(n + 1):
            k = n - j
            brauer = math.prod(2 * k - 1 - 2 * i for i in range(k))
            total += math.comb(2 * n, 2 * j) * brauer
        return total
    if family == "L":
        return sum(math.comb(n, j) ** 2 * math.factorial(n - j) for j in range(n + 1))
    if family == "S":
        return math.factorial(n)
    raise ValueError(f"unknown family {family!r}")


def partial_matchings(points: Sequence[int]) -> Iterator[list]:
    """Every set of disjoint pairs on ``points`` (unpaired points stay single)."""
    points = list(points)
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    yield from partial_matchings(rest)
    for k, other in enumerate(rest):
        for sub in partial_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + sub


@lru_cache(maxsize=None)
def _cell_basis_cached(family: str, n: int, t: int) -> tuple:
    out = []
    for vert in itertools.combinations(range(n), n - t):
        free = [i for i in range(n) if i not in vert]
        arcs = [(v, n + k) for k, v in enumerate(vert)]
        if family == "L":
            out.append(_from_arcs(n, arcs))
        else:
            for m in partial_matchings(free):
                out.append(_from_arcs(n, arcs + m))
    out.sort(key=lambda d: d.partner)
    return tuple(out)


def cell_basis_diagrams(family: str, n: int, t: int) -> list:
    """Rank ``n-t`` diagrams with bottom row bot(u_{n,t}) and noncrossing verticals."""
    if family not in ("A", "L"):
        raise ValueError(f"cell modules exist for families A and L, not {family!r}")
    if not 0 <= t <= n:
        raise InvalidT(f"need 0 <= t <= n (n={n}, t={t})")
    return list(_cell_basis_cached(family, n, t))


def has_cell_bottom(c: Diagram, t: int) -> bool:
    n = c.n
    for j in range(n):
        f = c.partner[n + j]
        if j < n - t:
            if f >= n:
                return False
        elif f != n + j:
            return False
    return True


def factor_noncrossing(c: Diagram, t: int):
    """Split ``c = b . D(sigma)`` with ``b`` a noncrossing cell diagram.

    ``sigma`` is a permutation of ``range(n-t)``; when ``c`` joins the k-th
    smallest vertical top endpoint to ``j'`` then ``sigma(j) = k``.
    """
    n = c.n
    if c.rank != n - t:
        raise RankMismatch(f"diagram has rank {c.rank}, expected {n - t}")
    if not has_cell_bottom(c, t):
        raise BadBottomRow("bottom row differs from bot(u_(n,t))")
    tops = sorted(c.partner[n + j] for j in range(n - t))
    order = {v: k for k, v in enumerate(tops)}
    sigma = tuple(order[c.partner[n + j]] for j in range(n - t))
    partner = list(c.partner)
    for k, v in enumerate(tops):
        partner[v] = n + k
        partner[n + k] = v
    return Diagram(n, tuple(partner)), sigma
