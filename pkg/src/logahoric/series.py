"""Exact truncated Laurent series over Q in a tagged formal variable.

Two variables are in play: ``t`` on the cyclic cover and ``z`` on the base,
related by ``t**r == z``.  A series carries a truncation ``N``: every
coefficient of exponent ``<= N`` is known exactly, everything above is
unknown (not zero).  The literal form ``O(t^M)`` means ``N = M - 1``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NonIntegralExponent, ParseError, TruncationExhausted, VariableMismatch

T = "t"
Z = "z"


@dataclass(frozen=True)
class Variable:
    tag: str
    r: int = 1

    def __post_init__(self):
        if self.tag not in (T, Z):
            raise ValueError(f"variable tag must be 't' or 'z', got {self.tag!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"order r must be a positive integer, got {self.r!r}")

    def compatible(self, other: "Variable") -> bool:
        # r is only context for z
        return self.tag == other.tag and (self.tag == Z or self.r == other.r)

    def __str__(self):
        return self.tag


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class LaurentSeries:
    """Sparse truncated Laurent series with exact rational coefficients."""

    __slots__ = ("_var", "_coeffs", "_trunc")

    def __init__(self, var: Variable, coeffs: Mapping[int, object] | Iterable = (), truncation: int = 0):
        if isinstance(coeffs, Mapping):
            coeffs = coeffs.items()
        trunc = int(truncation)
        store: dict[int, Fraction] = {}
        for k, c in coeffs:
            k = int(k)
            if k > trunc:
                continue
            c = _frac(c)
            if c:
                store[k] = store.get(k, Fraction(0)) + c
                if not store[k]:
                    del store[k]
        object.__setattr__(self, "_var", var)
        object.__setattr__(self, "_coeffs", dict(sorted(store.items())))
        object.__setattr__(self, "_trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # constructors

    @classmethod
    def zero(cls, var: Variable, truncation: int) -> "LaurentSeries":
        return cls(var, {}, truncation)

    @classmethod
    def constant(cls, var: Variable, c, truncation: int) -> "LaurentSeries":
        return cls(var, {0: c}, truncation)

    @classmethod
    def monomial(cls, var: Variable, c, k: int, truncation: int) -> "LaurentSeries":
        return cls(var, {k: c}, truncation)

    # accessors

    @property
    def variable(self) -> Variable:
        return self._var

    @property
    def truncation(self) -> int:
        return self._trunc

    def items(self) -> tuple:
        return tuple(self._coeffs.items())

    def exponents(self):
        return list(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def order(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, ``None`` for zero."""
        return next(iter(self._coeffs), None)

    def valuation(self) -> int:
        """Guaranteed lower bound on the order; ``N + 1`` for the zero series."""
        o = self.order()
        return self._trunc + 1 if o is None else o

    def coefficient(self, k: int) -> Fraction:
        if k > self._trunc:
            raise TruncationExhausted(k, self._trunc)
        return self._coeffs.get(k, Fraction(0))

    __getitem__ = coefficient

    def truncate(self, n: int) -> "LaurentSeries":
        if n >= self._trunc:
            return self
        return LaurentSeries(self._var, self._coeffs, n)

    def with_variable(self, var: Variable) -> "LaurentSeries":
        return LaurentSeries(var, self._coeffs, self._trunc)

    # arithmetic

    def _check(self, other: "LaurentSeries"):
        if not self._var.compatible(other._var):
            raise VariableMismatch(f"{self._var!r} vs {other._var!r}")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return self + LaurentSeries.constant(self._var, other, self._trunc)
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self._var, {k: -c for k, c in self._coeffs.items()}, self._trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return series_mul(self, other)
        c = _frac(other)
        return LaurentSeries(self._var, {k: c * v for k, v in self._coeffs.items()}, self._trunc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``var**k`` exactly."""
        return LaurentSeries(self._var, {e + k: c for e, c in self._coeffs.items()}, self._trunc + k)

    def inverse(self) -> "LaurentSeries":
        return series_inverse(self)

    def derivative(self) -> "LaurentSeries":
        return series_derivative(self)

    # comparison

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._var == other._var and self._trunc == other._trunc and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._var, self._trunc, tuple(self._coeffs.items())))

    def agrees(self, other: "LaurentSeries") -> bool:
        """Equality on the common range of known exponents."""
        self._check(other)
        n = min(self._trunc, other._trunc)
        return self.truncate(n)._coeffs == other.truncate(n)._coeffs

    def __repr__(self):
        return f"LaurentSeries({format_series(self)!r})"

    def __str__(self):
        return format_series(self)


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    a._check(b)
    n = min(a.truncation, b.truncation)
    out = dict(a.truncate(n).items())
    for k, c in b.truncate(n).items():
        out[k] = out.get(k, Fraction(0)) + c
    return LaurentSeries(a.variable, out, n)


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    a._check(b)
    n = min(a.truncation + b.valuation(), b.truncation + a.valuation())
    out: dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= n:
                out[i + j] = out.get(i + j, Fraction(0)) + x * y
    return LaurentSeries(a.variable, out, n)


def series_inverse(a: LaurentSeries) -> LaurentSeries:
    v = a.order()
    if v is None:
        raise ZeroDivisionError("inverse of the zero series")
    # a = t^v * u with u a unit known through exponent N - v
    u = [a.coefficient(v + k) for k in range(a.truncation - v + 1)]
    w = [Fraction(1) / u[0]]
    for k in range(1, len(u)):
        s = sum(u[i] * w[k - i] for i in range(1, k + 1))
        w.append(-s / u[0])
    return LaurentSeries(a.variable, {k - v: c for k, c in enumerate(w)}, a.truncation - 2 * v)


def series_derivative(a: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(a.variable, {k - 1: k * c for k, c in a.items() if k}, a.truncation - 1)


def substitute_t_to_z(a: LaurentSeries, label=None) -> LaurentSeries:
    """Rewrite a series in ``t`` as a series in ``z = t**r``."""
    if a.variable.tag != T:
        raise VariableMismatch("substitute_t_to_z needs a series in t")
    r = a.variable.r
    out = {}
    for k, c in a.items():
        if k % r:
            raise NonIntegralExponent(k, r, label)
        out[k // r] = c
    return LaurentSeries(Variable(Z, r), out, a.truncation // r)


def expand_z_to_t(a: LaurentSeries, r: int | None = None) -> LaurentSeries:
    """Inverse of :func:`substitute_t_to_z`: ``z**k -> t**(r*k)``."""
    if a.variable.tag != Z:
        raise VariableMismatch("expand_z_to_t needs a series in z")
    r = a.variable.r if r is None else r
    # z^(N+1) = t^(r(N+1)) is the first unknown term
    return LaurentSeries(Variable(T, r), {r * k: c for k, c in a.items()}, r * a.truncation + r - 1)


class Homogeneity(enum.Enum):
    NOT_HOMOGENEOUS = "NotHomogeneous"


NOT_HOMOGENEOUS = Homogeneity.NOT_HOMOGENEOUS


def mu_r_weight(a: LaurentSeries):
    """Weight ``w`` mod r with ``gamma . a = zeta**w a`` where ``gamma . t = zeta**-1 t``.

    Returns ``NOT_HOMOGENEOUS`` when the exponents fall in several classes,
    and ``None`` for the zero series (which lies in every weight space).
    """
    if a.variable.tag != T:
        raise VariableMismatch("mu_r weights are defined for series in t")
    r = a.variable.r
    weights = {(-k) % r for k in a.exponents()}
    if not weights:
        return None
    if len(weights) > 1:
        return NOT_HOMOGENEOUS
    return weights.pop()


# literal syntax


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_series(a: LaurentSeries, with_order: bool = True) -> str:
    v = a.variable.tag
    parts = []
    for k, c in a.items():
        mag = abs(c)
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = v if k == 1 else f"{v}^{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    if with_order:
        o = f"O({v}^{a.truncation + 1})"
        parts.append(o if not parts else "+ " + o)
    return " ".join(parts) if parts else "0"


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<big>O\(\s*(?P<bv>[tz])\s*(?:\^\s*(?P<bexp>\(?\s*-?\d+\s*\)?))?\s*\))"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<var>[tz])(?:\s*\^\s*(?P<exp>\(\s*-?\d+\s*\)|-?\d+))?"
    r"|(?P<op>[+\-*])"
    r")"
)


def parse_series(
    text: str,
    r: int = 1,
    truncation: int | None = None,
    default_tag: str | None = None,
) -> LaurentSeries:
    """Parse ``1/2*t^-1 + 3*t^2 + O(t^5)``.

    Without an ``O(...)`` term the supplied ``truncation`` is used.  A
    constant literal takes its variable from ``default_tag``.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty series literal")
    pos = 0
    terms: dict[int, Fraction] = {}
    tags = set()
    big_o = None
    sign = 1
    coef = None
    expect_term = True
    pending_op = False
    star = False

    def flush_constant():
        terms[0] = terms.get(0, Fraction(0)) + sign * coef

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in series", column=pos + 1)
        pos = m.end()
        col = m.start() + 1
        if star and not m.group("var"):
            raise ParseError("'*' must be followed by a variable", column=col)
        if m.group("big"):
            if not expect_term or coef is not None or sign != 1 or big_o is not None:
                raise ParseError("O(...) must appear once as a separate '+' term", column=col)
            tags.add(m.group("bv"))
            e = m.group("bexp")
            big_o = int(e.strip("() ")) if e else 1
            expect_term, pending_op = False, False
        elif m.group("num") is not None:
            if not expect_term or coef is not None:
                raise ParseError("missing operator before number", column=col)
            den = m.group("num").partition("/")[2]
            if den and int(den) == 0:
                raise ParseError("zero denominator", column=col)
            coef = Fraction(m.group("num"))
            pending_op = False
        elif m.group("var"):
            if not expect_term:
                raise ParseError("missing operator before variable", column=col)
            tags.add(m.group("var"))
            e = m.group("exp")
            k = int(e.strip("() ")) if e else 1
            terms[k] = terms.get(k, Fraction(0)) + sign * (Fraction(1) if coef is None else coef)
            coef, expect_term, pending_op, star = None, False, False, False
        elif m.group("op") == "*":
            if coef is None:
                raise ParseError("'*' must follow a coefficient", column=col)
            star = True
        else:
            s = -1 if m.group("op") == "-" else 1
            if coef is not None:
                flush_constant()
                coef, expect_term = None, False
            if big_o is not None and not expect_term:
                raise ParseError("O(...) must be the last term", column=col)
            sign = sign * s if pending_op else s
            expect_term, pending_op = True, True
    if star:
        raise ParseError("series ends with '*'")
    if coef is not None:
        flush_constant()
    elif expect_term:
        raise ParseError("series ends with an operator")
    if len(tags) > 1:
        raise ParseError("series mixes t and z")
    tag = tags.pop() if tags else default_tag
    if tag is None:
        raise ParseError("cannot infer the series variable from a constant literal")
    if big_o is not None:
        n = big_o - 1
    elif truncation is not None:
        n = truncation
    else:
        raise ParseError("series has no O(...) term and no default truncation")
    if terms and max(terms) > n:
        raise ParseError(f"term of exponent {max(terms)} lies above the declared order O({tag}^{n + 1})")
    return LaurentSeries(Variable(tag, r), terms, n)


class LaurentMatrix:
    """Square matrix of Laurent series sharing one variable and truncation."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("LaurentMatrix needs a nonempty square array")
        var, trunc = rows[0][0].variable, rows[0][0].truncation
        for row in rows:
            for s in row:
                if s.variable != var or s.truncation != trunc:
                    raise VariableMismatch("matrix entries must share variable and truncation")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def build(cls, entries) -> "LaurentMatrix":
        """Cut every entry to the smallest truncation present."""
        rows = [list(row) for row in entries]
        n = min(s.truncation for row in rows for s in row)
        var = rows[0][0].variable
        return cls([[s.with_variable(var).truncate(n) for s in row] for row in rows])

    @classmethod
    def zero(cls, n: int, var: Variable, truncation: int) -> "LaurentMatrix":
        z = LaurentSeries.zero(var, truncation)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, diag, truncation: int | None = None) -> "LaurentMatrix":
        diag = list(diag)
        var = diag[0].variable
        n = min(s.truncation for s in diag) if truncation is None else truncation
        z = LaurentSeries.zero(var, n)
        return cls.build([[diag[i] if i == j else z for j in range(len(diag))] for i in range(len(diag))])

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def variable(self) -> Variable:
        return self.entries[0][0].variable

    @property
    def truncation(self) -> int:
        return self.entries[0][0].truncation

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn) -> "LaurentMatrix":
        """Apply ``fn(i, j, series)`` entrywise and rebuild."""
        return LaurentMatrix.build([[fn(i, j, s) for j, s in enumerate(row)] for i, row in enumerate(self.entries)])

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix.build(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return self.map(lambda i, j, s: -s)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.map(lambda i, j, s: s * c)

    __rmul__ = __mul__

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.n
        if other.n != n:
            raise ValueError("matrix size mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    p = self.entries[i][k] * other.entries[k][j]
                    acc = p if acc is None else acc + p
                row.append(acc)
            out.append(row)
        return LaurentMatrix.build(out)

    def derivative(self) -> "LaurentMatrix":
        return self.map(lambda i, j, s: s.derivative())

    def truncate(self, n: int) -> "LaurentMatrix":
        return self.map(lambda i, j, s: s.truncate(n))

    def constant_term(self) -> list:
        """Matrix of ``var**0`` coefficients (raises ``TruncationExhausted`` if N < 0)."""
        return [[s.coefficient(0) for s in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def agrees(self, other: "LaurentMatrix") -> bool:
        return self.n == other.n and all(
            a.agrees(b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __str__(self):
        return "\n".join(
            f"[{i + 1}][{j + 1}] = {s}" for i, row in enumerate(self.entries) for j, s in enumerate(row)
        )
