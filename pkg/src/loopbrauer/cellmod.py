"""Cell modules M_X(lam) = I_n^{n-t} u_{n,t} (x) S^lam with exact action matrices.

Basis vectors are pairs ``(a, k)`` of a noncrossing cell diagram ``a`` and a
standard tableau index ``k``; the flat index is ``a_index * f + k``.
Module vectors are dicts ``{flat index: LaurentPoly}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import diagrams as dg
from .algebra import AlgebraElement
from .diagrams import Diagram, StrandMismatch, compose, factor_noncrossing
from .linalg import joint_kernel
from .scalars import EvalAtZero, LaurentPoly, lp_eval, parse_rational
from .symgroup import SpechtRep, as_partition, perm_action, specht


@dataclass
class CellModule:
    """Cell module over the family ``A`` or ``L`` on ``n`` strands.

    ``rep`` is normally ``S^lam`` with ``|lam| = n - t``; a larger ``rep``
    restricted to ``S_{n-t}`` is allowed (used by the branching maps).
    """

    family: str
    n: int
    t: int
    rep: SpechtRep
    diagram_basis: list = field(init=False)
    index: dict = field(init=False, repr=False)
    _perm_cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if self.rep.degree < self.n - self.t:
            raise ValueError("Specht module too small for S_(n-t)")
        self.diagram_basis = dg.cell_basis_diagrams(self.family, self.n, self.t)
        self.index = {d: k for k, d in enumerate(self.diagram_basis)}

    @property
    def lam(self):
        return self.rep.lam

    @property
    def f(self) -> int:
        return self.rep.dim

    @property
    def dim(self) -> int:
        return len(self.diagram_basis) * self.rep.dim

    def flat(self, a_index: int, k: int) -> int:
        return a_index * self.f + k

    def unflat(self, idx: int):
        return divmod(idx, self.f)

    def basis_vector(self, a_index: int, k: int) -> dict:
        return {self.flat(a_index, k): LaurentPoly.one()}

    def sigma_matrix(self, sigma: tuple):
        M = self._perm_cache.get(sigma)
        if M is None:
            M = perm_action(self.rep, sigma)
            self._perm_cache[sigma] = M
        return M

    def describe(self) -> dict:
        return {"family": self.family, "n": self.n, "t": self.t,
                "lambda": list(self.lam), "dim": self.dim}


def cell_module(family: str, n: int, lam) -> CellModule:
    lam = as_partition(lam)
    t = n - sum(lam)
    if not 0 <= t <= n:
        raise dg.InvalidT(f"|lambda| = {sum(lam)} does not fit on {n} strands")
    return CellModule(family, n, t, specht(lam))


def cell_dim(family: str, n: int, lam) -> int:
    """``|cell basis| * f^lam`` without building the module."""
    lam = as_partition(lam)
    t = n - sum(lam)
    if not 0 <= t <= n:
        return 0
    return len(dg.cell_basis_diagrams(family, n, t)) * len(specht(lam).tableaux)


def act(d: Diagram, m: CellModule, a_index: int, k: int) -> dict:
    """``d . (a (x) e_k)``: zero when the rank drops, else ``x^l b (x) rho(sigma) e_k``."""
    if d.n != m.n:
        raise StrandMismatch(f"diagram on {d.n} strands acting on a module over {m.n}")
    a = m.diagram_basis[a_index]
    res = compose(d, a)
    if res.diagram.rank < m.n - m.t:
        return {}
    b, sigma = factor_noncrossing(res.diagram, m.t)
    b_index = m.index[b]
    M = m.sigma_matrix(sigma)
    xl = LaurentPoly.monomial(res.loops_total)
    out = {}
    for r in range(m.f):
        c = M[r][k]
        if c:
            out[m.flat(b_index, r)] = xl.scale(c)
    return out


def _add_into(acc: dict, vec: dict, coeff: LaurentPoly | None = None) -> None:
    for i, c in vec.items():
        if coeff is not None:
            c = c * coeff
        s = acc[i] + c if i in acc else c
        if s:
            acc[i] = s
        else:
            acc.pop(i, None)


def act_vector(d: Diagram, m: CellModule, vec: dict) -> dict:
    out: dict = {}
    for idx, c in vec.items():
        a_index, k = m.unflat(idx)
        _add_into(out, act(d, m, a_index, k), c)
    return out


def act_element(el: AlgebraElement, m: CellModule, vec: dict) -> dict:
    """Action of a one-parameter algebra element on a module vector."""
    if el.n != m.n:
        raise StrandMismatch(f"element on {el.n} strands acting on a module over {m.n}")
    out: dict = {}
    for d, c in el.coeffs.items():
        _add_into(out, act_vector(d, m, vec), c)
    return out


@dataclass
class ActionMatrix:
    """Sparse matrix of a diagram on a cell module, entries ``{(row, col): LaurentPoly}``."""

    diagram: Diagram
    dim: int
    entries: dict

    def dense(self):
        M = [[LaurentPoly.zero()] * self.dim for _ in range(self.dim)]
        for (r, c), v in self.entries.items():
            M[r][c] = v
        return M

    def at(self, x0) -> list:
        x0 = parse_rational(x0)
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (r, c), v in self.entries.items():
            M[r][c] = lp_eval(v, x0)
        return M

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for (r, c), v in self.entries.items():
            if c in vec:
                s = out.get(r, LaurentPoly.zero()) + v * vec[c]
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out


def action_matrix(d: Diagram, m: CellModule) -> ActionMatrix:
    entries = {}
    for a_index in range(len(m.diagram_basis)):
        for k in range(m.f):
            col = m.flat(a_index, k)
            for row, v in act(d, m, a_index, k).items():
                entries[row, col] = v
    return ActionMatrix(d, m.dim, entries)


def element_matrix(el: AlgebraElement, m: CellModule) -> dict:
    """Sparse matrix ``{(row, col): LaurentPoly}`` of an algebra element."""
    entries: dict = {}
    for col in range(m.dim):
        for row, v in act_element(el, m, {col: LaurentPoly.one()}).items():
            entries[row, col] = v
    return entries


def quotient_diagrams(m: CellModule) -> list:
    """All rank ``n-t`` diagrams of the module's family (a spanning set of I_n^{n-t})."""
    return dg.diagrams_of_rank(m.family, m.n, m.n - m.t)


def module_rep(m: CellModule, diagrams: Iterable[Diagram] | None = None) -> dict:
    diagrams = quotient_diagrams(m) if diagrams is None else diagrams
    return {d: action_matrix(d, m) for d in diagrams}


def radical(m: CellModule, x0, rep: dict | None = None) -> list:
    """Basis of the vectors killed by every rank ``n-t`` diagram at ``x = x0``."""
    x0 = parse_rational(x0)
    if x0 == 0:
        raise EvalAtZero("the radical is only defined here for x0 != 0")
    rep = module_rep(m) if rep is None else rep
    return joint_kernel((am.at(x0) for am in rep.values()), m.dim)


def is_irreducible(m: CellModule, x0) -> bool:
    return not radical(m, x0)
