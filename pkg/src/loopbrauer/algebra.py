"""Linear combinations of diagrams, the one- and two-parameter products,
filtration quotients, relation checks and cached multiplication tables."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from . import diagrams as dg
from .diagrams import Diagram, RankMismatch, StrandMismatch, compose
from .scalars import BiLaurent, LaurentPoly

log = logging.getLogger(__name__)

ONE_PARAM = "one-param"
TWO_PARAM = "two-param"
MODES = (ONE_PARAM, TWO_PARAM)
TABLE_FORMAT_VERSION = "v1"


class CacheVersionMismatch(RuntimeError):
    pass


class CorruptCache(RuntimeError):
    pass


def _coeff_type(mode: str):
    if mode == ONE_PARAM:
        return LaurentPoly
    if mode == TWO_PARAM:
        return BiLaurent
    raise ValueError(f"unknown mode {mode!r}")


def loop_factor(res: dg.ComposeResult, mode: str):
    if mode == ONE_PARAM:
        return LaurentPoly.monomial(res.loops_total)
    return BiLaurent.monomial((res.loops_cycles, res.loops_looplines))


class AlgebraElement:
    """Immutable formal combination ``sum c_d d`` over diagrams on ``n`` strands."""

    __slots__ = ("n", "mode", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping | Iterable = (), mode: str = ONE_PARAM):
        ctype = _coeff_type(mode)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for d, c in items:
            if d.n != n:
                raise StrandMismatch(f"diagram on {d.n} strands in an element on {n}")
            if not isinstance(c, ctype):
                c = ctype.const(c)
            acc[d] = acc[d] + c if d in acc else c
        self.n = n
        self.mode = mode
        self._coeffs = {d: c for d, c in acc.items() if c}

    @classmethod
    def basis(cls, d: Diagram, mode: str = ONE_PARAM, coeff=1) -> "AlgebraElement":
        return cls(d.n, {d: coeff}, mode)

    @classmethod
    def zero(cls, n: int, mode: str = ONE_PARAM) -> "AlgebraElement":
        return cls(n, {}, mode)

    @classmethod
    def one(cls, n: int, mode: str = ONE_PARAM) -> "AlgebraElement":
        return cls.basis(dg.identity(n), mode)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def support(self) -> list:
        return sorted(self._coeffs)

    def coeff(self, d: Diagram):
        return self._coeffs.get(d, _coeff_type(self.mode).zero())

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        """A single diagram with a coefficient ``c x^k``."""
        if len(self._coeffs) != 1:
            return False
        (c,) = self._coeffs.values()
        return len(c.terms) == 1

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.n != self.n:
            raise StrandMismatch(f"elements on {self.n} and {other.n} strands")
        if other.mode != self.mode:
            raise ValueError(f"mixing {self.mode} and {other.mode} elements")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.n, self.mode, self._coeffs) == (other.n, other.mode, other._coeffs)

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self._coeffs.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out[d] + c if d in out else c
        return AlgebraElement(self.n, out, self.mode)

    def __neg__(self):
        return AlgebraElement(self.n, {d: -c for d, c in self._coeffs.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        ctype = _coeff_type(self.mode)
        if not isinstance(c, ctype):
            c = ctype.const(c)
        return AlgebraElement(self.n, {d: v * c for d, v in self._coeffs.items()}, self.mode)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other) if self.mode == ONE_PARAM else multiply_two_param(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def star(self) -> "AlgebraElement":
        return AlgebraElement(self.n, {dg.star(d): c for d, c in self._coeffs.items()}, self.mode)

    def embed(self) -> "AlgebraElement":
        return AlgebraElement(self.n + 1, {dg.embed(d): c for d, c in self._coeffs.items()},
                              self.mode)

    def specialize(self) -> "AlgebraElement":
        """Two-parameter element with ``x1 = x2 = x``."""
        if self.mode == ONE_PARAM:
            return self
        return AlgebraElement(self.n, {d: c.specialize() for d, c in self._coeffs.items()},
                              ONE_PARAM)

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d in sorted(self._coeffs):
            c = self._coeffs[d]
            name = diagram_name(d)
            if c == 1:
                parts.append(name)
            elif len(c.terms) == 1:
                parts.append(f"{c} * {name}")
            else:
                parts.append(f"({c}) * {name}")
        return " + ".join(parts)


def diagram_name(d: Diagram) -> str:
    """Generator name when ``d`` is one (``e1``, ``u2``, ``g1``, ``1``), else its text form."""
    return _named(d.n).get(d, f"[{d.to_text()}]")


_NAMES: dict = {}


def _named(n: int) -> dict:
    if n not in _NAMES:
        names = {dg.identity(n): "1"}
        for i in range(1, n):
            names[dg.generator("e", i, n)] = f"e{i}"
            names[dg.generator("g", i, n)] = f"g{i}"
        for i in range(1, n + 1):
            names[dg.generator("u", i, n)] = f"u{i}"
        _NAMES[n] = names
    return _NAMES[n]


def _product(a: AlgebraElement, b: AlgebraElement, mode: str, keep_rank=None):
    a._check(b)
    out: dict = {}
    for da, ca in a._coeffs.items():
        for db, cb in b._coeffs.items():
            res = compose(da, db)
            if keep_rank is not None and res.diagram.rank < keep_rank:
                continue
            c = ca * cb * loop_factor(res, mode)
            d = res.diagram
            out[d] = out[d] + c if d in out else c
    return AlgebraElement(a.n, out, mode)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in A_n(x): each pair of diagrams contributes ``x^l G'(a, b)``."""
    if a.mode != ONE_PARAM or b.mode != ONE_PARAM:
        raise ValueError("multiply() works on one-parameter elements")
    return _product(a, b, ONE_PARAM)


def multiply_two_param(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in A_n(x1, x2): cycles weigh ``x1``, loop-ended lines ``x2``."""
    if a.mode != TWO_PARAM or b.mode != TWO_PARAM:
        raise ValueError("multiply_two_param() works on two-parameter elements")
    return _product(a, b, TWO_PARAM)


def multiply_in_quotient(a: AlgebraElement, b: AlgebraElement, m: int) -> AlgebraElement:
    """Product in the quotient I_n^m: terms whose rank drops below ``m`` vanish."""
    for el in (a, b):
        for d in el._coeffs:
            if d.rank != m:
                raise RankMismatch(f"diagram of rank {d.rank} in a product in I^{m}")
    return _product(a, b, a.mode, keep_rank=m)


def gen(kind: str, i: int, n: int, mode: str = ONE_PARAM) -> AlgebraElement:
    return AlgebraElement.basis(dg.generator(kind, i, n), mode)


def elem(d: Diagram, mode: str = ONE_PARAM) -> AlgebraElement:
    return AlgebraElement.basis(d, mode)


def prod(elements, n: int | None = None, mode: str = ONE_PARAM) -> AlgebraElement:
    elements = list(elements)
    out = elements[0] if elements else AlgebraElement.one(n, mode)
    for e in elements[1:]:
        out = out * e
    return out


# -- relations ----------------------------------------------------------

def _from_arcs_1based(n: int, top_arcs=(), bottom_arcs=(), verticals=()) -> Diagram:
    partner = list(range(2 * n))
    for i, j in top_arcs:
        partner[i - 1], partner[j - 1] = j - 1, i - 1
    for i, j in bottom_arcs:
        partner[n + i - 1], partner[n + j - 1] = n + j - 1, n + i - 1
    for i, j in verticals:
        partner[i - 1], partner[n + j - 1] = n + j - 1, i - 1
    return Diagram(n, tuple(partner))


def d_diagrams(n: int) -> dict:
    """The four exceptional diagrams of the generator decomposition, drawn directly.

    ``d1``: top arc ``(n-2, n-1)``, loop at ``n``; bottom loop at ``(n-2)'``,
    bottom arc ``((n-1)', n')``.  ``d2``: vertical ``(n-1, n')``, loops at
    ``n`` and ``(n-1)'``.  ``d3``: vertical ``(n-2, n')``, loops at ``n-1, n``,
    bottom arc ``((n-2)', (n-1)')``.  ``d4``: loops at ``n-1, n``, bottom arc
    ``((n-1)', n')``.  All other strands are straight.
    """
    if n < 3:
        raise ValueError("the d-diagrams need n >= 3")
    straight3 = [(k, k) for k in range(1, n - 2)]
    straight2 = [(k, k) for k in range(1, n - 1)]
    return {
        "d1": _from_arcs_1based(n, [(n - 2, n - 1)], [(n - 1, n)], straight3),
        "d2": _from_arcs_1based(n, verticals=straight2 + [(n - 1, n)]),
        "d3": _from_arcs_1based(n, bottom_arcs=[(n - 2, n - 1)], verticals=straight3 + [(n - 2, n)]),
        "d4": _from_arcs_1based(n, bottom_arcs=[(n - 1, n)], verticals=straight2),
    }


@dataclass
class RelationResult:
    name: str
    passed: bool
    detail: str = ""
    x_power: int | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.x_power is not None:
            out["x_power"] = self.x_power
        return out


def _monomial_multiple(lhs: AlgebraElement, rhs: AlgebraElement):
    """``k`` with ``lhs = x^k rhs`` when ``rhs`` is a single diagram, else ``None``."""
    if len(rhs._coeffs) != 1 or len(lhs._coeffs) != 1:
        return None
    (d1, c1), = lhs._coeffs.items()
    (d2, c2), = rhs._coeffs.items()
    if d1 != d2 or len(c1.terms) != 1 or len(c2.terms) != 1:
        return None
    (e1, v1), = c1.terms.items()
    (e2, v2), = c2.terms.items()
    if v1 != v2:
        return None
    return e1 - e2


def check_relations(n: int, mode: str = ONE_PARAM) -> list:
    """Verify the generator relations and the d-identities by exact multiplication."""
    if n < 2:
        raise ValueError("relations need n >= 2")

    def g(kind, i):
        return gen(kind, i, n, mode)

    x = LaurentPoly.x() if mode == ONE_PARAM else None
    results = []

    def exact(name, lhs, rhs):
        ok = lhs == rhs
        results.append(RelationResult(name, ok, "" if ok else f"{lhs} != {rhs}"))

    exact("u_n e_{n-1} = u_{n-1} e_{n-1}", g("u", n) * g("e", n - 1), g("u", n - 1) * g("e", n - 1))
    exact("g_{n-1} u_{n-1} = u_n g_{n-1}", g("g", n - 1) * g("u", n - 1), g("u", n) * g("g", n - 1))
    exact("u_{n-1} g_{n-1} = g_{n-1} u_n", g("u", n - 1) * g("g", n - 1), g("g", n - 1) * g("u", n))

    if n >= 3:
        pics = d_diagrams(n)
        words = {
            "d1": [("e", n - 2), ("u", n - 1), ("u", n - 2), ("e", n - 1)],
            "d2": [("u", n), ("g", n - 1)],
            "d3": [("u", n), ("e", n - 1), ("e", n - 2)],
            "d4": [("u", n - 1), ("e", n - 1)],
        }
        for key, word in words.items():
            lhs = prod([g(k, i) for k, i in word])
            rhs = AlgebraElement.basis(pics[key], mode)
            label = f"{key} = " + " ".join(f"{k}_{i}" for k, i in word)
            if mode == ONE_PARAM:
                k = _monomial_multiple(lhs, rhs)
                ok = k is not None
                detail = "" if k in (None, 0) else f"holds up to the unit x^{k}"
                if k is None:
                    detail = f"product {lhs} is not a monomial multiple of the pictured diagram"
                results.append(RelationResult(label, ok, detail, k))
            else:
                ok = lhs.is_monomial() and lhs.support() == [pics[key]]
                results.append(RelationResult(label, ok, str(lhs)))
            # the starred diagram is the reversed word of starred generators
            rev = prod([g(k, i).star() for k, i in reversed(word)])
            exact(f"{key}* = reversed word", rev, lhs.star())

    one = AlgebraElement.one(n, mode)
    for i in range(1, n):
        ei, gi = g("e", i), g("g", i)
        if mode == ONE_PARAM:
            exact(f"e_{i}^2 = x e_{i}", ei * ei, ei.scale(x))
        else:
            exact(f"e_{i}^2 = x1 e_{i}", ei * ei, ei.scale(BiLaurent.monomial((1, 0))))
        exact(f"g_{i}^2 = 1", gi * gi, one)
        exact(f"g_{i} e_{i} = e_{i}", gi * ei, ei)
    for i in range(1, n - 1):
        ei, ej = g("e", i), g("e", i + 1)
        gi, gj = g("g", i), g("g", i + 1)
        exact(f"e_{i} e_{i+1} e_{i} = e_{i}", ei * ej * ei, ei)
        exact(f"e_{i+1} e_{i} e_{i+1} = e_{i+1}", ej * ei * ej, ej)
        exact(f"g_{i} g_{i+1} g_{i} = g_{i+1} g_{i} g_{i+1}", gi * gj * gi, gj * gi * gj)
    for i in range(1, n + 1):
        ui = g("u", i)
        if mode == ONE_PARAM:
            exact(f"u_{i}^2 = x u_{i}", ui * ui, ui.scale(x))
        else:
            exact(f"u_{i}^2 = x2 u_{i}", ui * ui, ui.scale(BiLaurent.monomial((0, 1))))
    return results


# -- generated subalgebra ---------------------------------------------------

def generated_subalgebra(gens: Iterable[AlgebraElement], n: int) -> set:
    """Diagrams reachable as monomials in the supports of ``gens`` (identity included)."""
    gen_diagrams = sorted({d for g in gens for d in g.support()})
    for d in gen_diagrams:
        if d.n != n:
            raise StrandMismatch(f"generator on {d.n} strands, expected {n}")
    reached = {dg.identity(n)} | set(gen_diagrams)
    frontier = list(reached)
    while frontier:
        nxt = []
        for d in frontier:
            for g in gen_diagrams:
                c = compose(d, g).diagram
                if c not in reached:
                    reached.add(c)
                    nxt.append(c)
        frontier = nxt
    return reached


def symmetric_generators(n: int, mode: str = ONE_PARAM) -> list:
    return [gen("g", i, n, mode) for i in range(1, n)] + [AlgebraElement.one(n, mode)]


# -- multiplication tables ------------------------------------------------

@dataclass
class MultTable:
    family: str
    n: int
    mode: str
    entries: dict  # (i, j) -> (k, l) or (k, l1, l2)

    @property
    def basis(self) -> list:
        return dg.enumerate_diagrams(self.family, self.n)

    def header(self) -> str:
        return f"LOOPBRAUER-TABLE {TABLE_FORMAT_VERSION} {self.family} {self.n} {self.mode}"

    def dumps(self) -> str:
        lines = [self.header()]
        for (i, j) in sorted(self.entries):
            val = self.entries[i, j]
            lines.append(f"{i} {j} -> " + " ".join(str(v) for v in val))
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_bytes(self.dumps().encode("utf-8"))

    @classmethod
    def loads(cls, text: str, family: str | None = None, n: int | None = None,
              mode: str | None = None) -> "MultTable":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise CorruptCache("empty table file")
        head = lines[0].split()
        if len(head) != 5 or head[0] != "LOOPBRAUER-TABLE":
            raise CorruptCache(f"bad header {lines[0]!r}")
        _, version, fam, n_s, md = head
        if version != TABLE_FORMAT_VERSION:
            raise CacheVersionMismatch(f"table format {version}, expected {TABLE_FORMAT_VERSION}")
        try:
            n_file = int(n_s)
        except ValueError as exc:
            raise CorruptCache(f"bad n in header {lines[0]!r}") from exc
        for want, got, what in ((family, fam, "family"), (n, n_file, "n"), (mode, md, "mode")):
            if want is not None and want != got:
                raise CacheVersionMismatch(f"cached table has {what}={got}, expected {want}")
        width = 2 if md == ONE_PARAM else 3
        size = len(dg.enumerate_diagrams(fam, n_file))
        entries = {}
        for ln, line in enumerate(lines[1:], start=2):
            left, sep, right = line.partition(" -> ")
            try:
                i, j = (int(v) for v in left.split())
                val = tuple(int(v) for v in right.split())
            except ValueError as exc:
                raise CorruptCache(f"line {ln}: {line!r}") from exc
            if not sep or len(val) != width or not (0 <= i < size and 0 <= j < size
                                                    and 0 <= val[0] < size):
                raise CorruptCache(f"line {ln}: {line!r}")
            if (i, j) in entries:
                raise CorruptCache(f"line {ln}: duplicate entry {i} {j}")
            entries[i, j] = val
        if len(entries) != size * size:
            raise CorruptCache(f"{len(entries)} entries, expected {size * size}")
        return cls(fam, n_file, md, entries)

    @classmethod
    def load(cls, path, family=None, n=None, mode=None) -> "MultTable":
        try:
            text = Path(path).read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorruptCache(f"{path} is not UTF-8") from exc
        return cls.loads(text, family, n, mode)

    def product(self, i: int, j: int) -> AlgebraElement:
        basis = self.basis
        val = self.entries[i, j]
        if self.mode == ONE_PARAM:
            c = LaurentPoly.monomial(val[1])
        else:
            c = BiLaurent.monomial((val[1], val[2]))
        return AlgebraElement(self.n, {basis[val[0]]: c}, self.mode)


def _table_row(args):
    family, n, mode, i = args
    basis = dg.enumerate_diagrams(family, n)
    index = {d: k for k, d in enumerate(basis)}
    a = basis[i]
    row = []
    for j, b in enumerate(basis):
        res = compose(a, b)
        k = index[res.diagram]
        if mode == ONE_PARAM:
            row.append(((i, j), (k, res.loops_total)))
        else:
            row.append(((i, j), (k, res.loops_cycles, res.loops_looplines)))
    return row


def default_cache_dir():
    env = os.environ.get("LOOPBRAUER_CACHE")
    return Path(env) if env else None


def table_path(cache_dir, family: str, n: int, mode: str) -> Path:
    return Path(cache_dir) / f"table-{TABLE_FORMAT_VERSION}-{family}{n}-{mode}.txt"


def compute_mult_table(family: str, n: int, mode: str = ONE_PARAM, jobs: int = 1) -> MultTable:
    if family not in ("A", "L", "S"):
        raise ValueError(f"unknown family {family!r}")
    _coeff_type(mode)
    size = len(dg.enumerate_diagrams(family, n))
    tasks = [(family, n, mode, i) for i in range(size)]
    entries = {}
    if jobs > 1 and size > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for row in pool.map(_table_row, tasks, chunksize=max(1, size // (4 * jobs))):
                entries.update(row)
    else:
        for task in tasks:
            entries.update(_table_row(task))
    return MultTable(family, n, mode, entries)


def mult_table(family: str, n: int, mode: str = ONE_PARAM, cache_dir=None,
               jobs: int = 1) -> MultTable:
    """Complete product table over the canonical basis, cached on disk when a directory is given."""
    if family == "A" and n > 4:
        raise ValueError("family A tables are limited to n <= 4")
    cache_dir = cache_dir if cache_dir is not None else default_cache_dir()
    if cache_dir is not None:
        path = table_path(cache_dir, family, n, mode)
        if path.exists():
            log.debug("loading cached table %s", path)
            return MultTable.load(path, family, n, mode)
    table = compute_mult_table(family, n, mode, jobs)
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        table.save(path)
    return table
