"""Exact coefficient arithmetic.

Rationals are plain :class:`fractions.Fraction` values.  ``LaurentPoly`` is a
Laurent polynomial in the indeterminate ``x`` with rational coefficients and
``BiLaurent`` is the two-variable analogue in ``x1, x2`` used by the
two-parameter product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class EvalAtZero(ZeroDivisionError):
    """Raised when a term with a negative exponent is evaluated at 0."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int/Fraction into an exact rational.

    Floats are rejected so that inexact values never enter the arithmetic.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise TypeError(f"refusing inexact rational {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(s)


def rational_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Laurent polynomial in ``x`` over the rationals.

    Immutable; the term map never stores a zero coefficient, so the zero
    polynomial is the empty map.
    """

    __slots__ = ("_terms", "_hash")
    variable_names = ("x",)

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for e, c in items:
            e = self._norm_exp(e)
            acc[e] = acc.get(e, 0) + Fraction(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # exponent handling; overridden by BiLaurent
    @staticmethod
    def _norm_exp(e):
        return int(e)

    @staticmethod
    def _add_exp(e, f):
        return e + f

    @staticmethod
    def _zero_exp():
        return 0

    @classmethod
    def _from_clean(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({cls._zero_exp(): c})

    @classmethod
    def zero(cls):
        return cls._from_clean({})

    @classmethod
    def one(cls):
        return cls.const(1)

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: c})

    @classmethod
    def x(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self.const(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        add = self._add_exp
        for e, c in self._terms.items():
            for f, d in other._terms.items():
                g = add(e, f)
                out[g] = out.get(g, 0) + c * d
        return self._from_clean({e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return self._from_clean({e: v * c for e, v in self._terms.items()})

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial with exponent ``exp``."""
        add = self._add_exp
        return self._from_clean({add(e, exp): c for e, c in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return self._from_clean({self._scale_exp(e, k): Fraction(1) / c ** (-k)})
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    @staticmethod
    def _scale_exp(e, k):
        return e * k

    def eval(self, x0) -> Fraction:
        return lp_eval(self, x0)

    def min_exp(self):
        return min(self._terms) if self._terms else None

    # serialization: sorted [exponent, numerator, denominator] triples
    def to_json(self) -> list:
        return [[e, str(c.numerator), str(c.denominator)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((e, Fraction(int(p), int(q))) for e, p, q in data)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = self._mono_str(e)
            if mono == "1":
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    @staticmethod
    def _mono_str(e) -> str:
        if e == 0:
            return "1"
        if e == 1:
            return "x"
        return f"x^{e}"


class BiLaurent(LaurentPoly):
    """Laurent polynomial in ``x1, x2``; exponents are pairs of ints."""

    __slots__ = ()
    variable_names = ("x1", "x2")

    @staticmethod
    def _norm_exp(e):
        a, b = e
        return (int(a), int(b))

    @staticmethod
    def _add_exp(e, f):
        return (e[0] + f[0], e[1] + f[1])

    @staticmethod
    def _zero_exp():
        return (0, 0)

    @staticmethod
    def _scale_exp(e, k):
        return (e[0] * k, e[1] * k)

    @classmethod
    def x(cls, power: int = 1):
        raise TypeError("use BiLaurent.monomial((a, b))")

    def specialize(self, x1=None, x2=None) -> LaurentPoly:
        """Set ``x1 = x2 = x`` (the default) and return a one-variable poly."""
        if x1 is None and x2 is None:
            return LaurentPoly((a + b, c) for (a, b), c in self._terms.items())
        raise NotImplementedError("only the diagonal specialization x1 = x2 = x")

    def eval(self, x0):
        raise TypeError("evaluate after specialize()")

    def to_json(self) -> list:
        return [[a, b, str(c.numerator), str(c.denominator)] for (a, b), c in self.items()]

    @classmethod
    def from_json(cls, data):
        return cls(((a, b), Fraction(int(p), int(q))) for a, b, p, q in data)

    @staticmethod
    def _mono_str(e) -> str:
        out = []
        for name, k in zip(("x1", "x2"), e):
            if k == 1:
                out.append(name)
            elif k:
                out.append(f"{name}^{k}")
        return "*".join(out) or "1"


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval(a: LaurentPoly, x0) -> Fraction:
    """Exact value of ``a`` at ``x = x0``."""
    x0 = parse_rational(x0)
    total = Fraction(0)
    for e, c in a._terms.items():
        if e < 0 and x0 == 0:
            raise EvalAtZero(f"cannot evaluate {a} at x = 0")
        total += c * x0 ** e
    return total


X = LaurentPoly.x()
ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()
