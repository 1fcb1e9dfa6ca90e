"""Root systems, rational coweights and loop-algebra elements.

Cartan basis vectors ``h_1..h_l`` are the basis of the coweight lattice, and
a root is stored as the integer vector ``(alpha(h_1), ..., alpha(h_l))``, so
``alpha(theta)`` is a dot product.  Brackets need structure constants; these
are generated from the matrix realization for ``sl_n`` (simple coroot basis)
and ``gl_n`` (diagonal basis).  For an explicit root list only the torus part
of the bracket is known.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import RootNotInSystem, StructureMismatch
from .series import LaurentSeries, Variable

Label = tuple  # ("h", i) or ("x", root_index)


def label_str(label: Label) -> str:
    kind, i = label
    return f"{kind}[{i + 1}]"


@dataclass(frozen=True)
class RootSystem:
    rank: int
    roots: tuple
    kind: str | None = None  # "A" for sl_n, "GL" for gl_n, None for an explicit root list
    n: int | None = None  # matrix size for the type A realizations

    def __post_init__(self):
        roots = tuple(tuple(int(c) for c in a) for a in self.roots)
        object.__setattr__(self, "roots", roots)
        for a in roots:
            if len(a) != self.rank:
                raise ValueError(f"root {a} does not have length rank={self.rank}")
            if not any(a):
                raise ValueError("zero is not a root")
            if tuple(-c for c in a) not in roots:
                raise ValueError(f"root list is not closed under negation: missing -{a}")
        if len(set(roots)) != len(roots):
            raise ValueError("duplicate roots")

    @classmethod
    def type_A(cls, l: int) -> "RootSystem":
        """``sl_{l+1}`` with Cartan basis the simple coroots."""
        n = l + 1
        roots = [_sl_root(a, b, n) for a, b in _matrix_root_pairs(n)]
        return cls(l, tuple(roots), "A", n)

    @classmethod
    def gl(cls, n: int) -> "RootSystem":
        """``gl_n`` with Cartan basis ``E_11, ..., E_nn``."""
        roots = []
        for a, b in _matrix_root_pairs(n):
            v = [0] * n
            v[a], v[b] = 1, -1
            roots.append(tuple(v))
        return cls(n, tuple(roots), "GL", n)

    @classmethod
    def from_roots(cls, roots) -> "RootSystem":
        roots = [tuple(a) for a in roots]
        if not roots:
            raise ValueError("explicit root list is empty")
        return cls(len(roots[0]), tuple(roots))

    def __str__(self):
        if self.kind == "A":
            return f"sl_{self.n}"
        if self.kind == "GL":
            return f"gl_{self.n}"
        return f"roots{list(self.roots)}"

    def root_index(self, alpha) -> int:
        """Accept a 0-based index or a root vector."""
        if isinstance(alpha, int):
            if 0 <= alpha < len(self.roots):
                return alpha
            raise RootNotInSystem(f"root index {alpha} out of range")
        try:
            return self.roots.index(tuple(alpha))
        except ValueError:
            raise RootNotInSystem(f"{tuple(alpha)} is not a root of {self}") from None

    def negative(self, i: int) -> int:
        return self.roots.index(tuple(-c for c in self.roots[i]))

    def labels(self) -> list:
        return [("h", i) for i in range(self.rank)] + [("x", i) for i in range(len(self.roots))]

    # matrix realization

    @cached_property
    def _matrix_pairs(self):
        if self.kind is None:
            return None
        return list(_matrix_root_pairs(self.n))

    def label_matrix(self, label: Label) -> dict:
        """Sparse matrix ``{(row, col): int}`` of a basis vector."""
        if self.kind is None:
            raise StructureMismatch(f"{self} has no matrix realization")
        kind, i = label
        if kind == "x":
            return {self._matrix_pairs[i]: 1}
        if self.kind == "GL":
            return {(i, i): 1}
        return {(i, i): 1, (i + 1, i + 1): -1}

    def cartan_from_diagonal(self, d) -> list:
        """Cartan coordinates of ``diag(d)``."""
        if self.kind == "GL":
            return list(d)
        if self.kind == "A":
            # h_k = E_kk - E_{k+1,k+1}; coordinate k is the partial sum d_0 + ... + d_k
            return list(itertools.accumulate(d))[: self.rank]
        raise StructureMismatch(f"{self} has no matrix realization")

    @cached_property
    def structure_constants(self) -> dict:
        """``{(a, b): {c: coeff}}`` for basis labels with ``[a, b] = sum coeff * c``."""
        table = {}
        labels = self.labels()
        if self.kind is None:
            for a in labels:
                for b in labels:
                    if a[0] == "h" and b[0] == "x":
                        k = self.roots[b[1]][a[1]]
                        table[a, b] = {b: k} if k else {}
                    elif a[0] == "x" and b[0] == "h":
                        k = self.roots[a[1]][b[1]]
                        table[a, b] = {a: -k} if k else {}
                    elif a[0] == "h" and b[0] == "h":
                        table[a, b] = {}
            return table
        pair_index = {p: i for i, p in enumerate(self._matrix_pairs)}
        for a in labels:
            ma = self.label_matrix(a)
            for b in labels:
                mb = self.label_matrix(b)
                comm = _sparse_commutator(ma, mb)
                out = {}
                diag = [0] * self.n
                for (i, j), c in comm.items():
                    if i == j:
                        diag[i] += c
                    else:
                        out[("x", pair_index[i, j])] = c
                if any(diag):
                    for k, c in enumerate(self.cartan_from_diagonal(diag)):
                        if c:
                            out[("h", k)] = c
                table[a, b] = out
        return table


def _matrix_root_pairs(n):
    # positive roots e_a - e_b (a < b) first, then the negatives in the same order
    pos = [(a, b) for a in range(n) for b in range(a + 1, n)]
    return pos + [(b, a) for a, b in pos]


def _sl_root(a, b, n):
    # (e_a - e_b)(E_kk - E_{k+1,k+1})
    return tuple(
        (k == a) - (k + 1 == a) - (k == b) + (k + 1 == b) for k in range(n - 1)
    )


def _sparse_commutator(x, y):
    out = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            if j == k:
                out[i, l] = out.get((i, l), 0) + a * b
            if l == i:
                out[k, j] = out.get((k, j), 0) - a * b
    return {key: c for key, c in out.items() if c}


@dataclass(frozen=True)
class Coweight:
    """Rational cocharacter with ``r * theta`` integral."""

    root_system: RootSystem
    r: int
    components: tuple

    def __post_init__(self):
        comps = tuple(Fraction(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if self.r < 1:
            raise ValueError("r must be positive")
        if len(comps) != self.root_system.rank:
            raise ValueError(f"coweight needs {self.root_system.rank} components, got {len(comps)}")
        for c in comps:
            if (c * self.r).denominator != 1:
                raise ValueError(f"component {c} is not in (1/{self.r})Z")

    @classmethod
    def zero(cls, root_system: RootSystem, r: int = 1) -> "Coweight":
        return cls(root_system, r, (0,) * root_system.rank)

    def __add__(self, other: "Coweight") -> "Coweight":
        if other.root_system != self.root_system:
            raise StructureMismatch("coweights of different root systems")
        r = math.lcm(self.r, other.r)
        return Coweight(self.root_system, r, tuple(a + b for a, b in zip(self.components, other.components)))

    def pairing(self, alpha) -> Fraction:
        return pairing(alpha, self)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def pairing(alpha, theta: Coweight) -> Fraction:
    """``alpha(theta)`` for a root given by index or vector."""
    rs = theta.root_system
    vec = rs.roots[rs.root_index(alpha)]
    return sum((a * c for a, c in zip(vec, theta.components)), Fraction(0))


def m_alpha(alpha, theta: Coweight) -> int:
    """Pole-order bound ``-floor(alpha(theta))`` of the root space in the parahoric."""
    return -math.floor(pairing(alpha, theta))


def theta_eigenspace(theta: Coweight, lam) -> list:
    """Basis labels spanning ``{xi in g : [theta, xi] = lam xi}``."""
    lam = Fraction(lam)
    rs = theta.root_system
    out = [("h", i) for i in range(rs.rank)] if lam == 0 else []
    out += [("x", i) for i in range(len(rs.roots)) if pairing(i, theta) == lam]
    return out


class LieAlgebraElement:
    """Element ``sum c_i h_i + sum c_alpha x_alpha`` of ``g`` over a Laurent series ring."""

    __slots__ = ("root_system", "cartan", "roots")

    def __init__(self, root_system: RootSystem, cartan, roots):
        cartan = tuple(cartan)
        roots = tuple(roots)
        if len(cartan) != root_system.rank or len(roots) != len(root_system.roots):
            raise StructureMismatch("coefficient count does not match the root system")
        coeffs = cartan + roots
        var, n = coeffs[0].variable, coeffs[0].truncation
        for c in coeffs:
            if c.variable != var or c.truncation != n:
                raise StructureMismatch("coefficients must share variable and truncation")
        object.__setattr__(self, "root_system", root_system)
        object.__setattr__(self, "cartan", cartan)
        object.__setattr__(self, "roots", roots)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebraElement is immutable")

    @classmethod
    def build(cls, root_system: RootSystem, var: Variable, truncation: int, terms=None) -> "LieAlgebraElement":
        """Assemble from ``{label: series}``; everything is cut to the smallest truncation."""
        terms = dict(terms or {})
        n = min([truncation] + [s.truncation for s in terms.values()])
        for s in terms.values():
            if not s.variable.compatible(var):
                raise StructureMismatch(f"series in {s.variable.tag} given for an element in {var.tag}")
        zero = LaurentSeries.zero(var, n)

        def get(label):
            s = terms.pop(label, None)
            return zero if s is None else s.with_variable(var).truncate(n)

        cartan = [get(("h", i)) for i in range(root_system.rank)]
        roots = [get(("x", i)) for i in range(len(root_system.roots))]
        if terms:
            raise StructureMismatch(f"unknown basis labels {sorted(terms)}")
        return cls(root_system, cartan, roots)

    @classmethod
    def from_coweight(cls, theta: Coweight, var: Variable, truncation: int) -> "LieAlgebraElement":
        """``theta`` as a constant Cartan element."""
        terms = {("h", i): LaurentSeries.constant(var, c, truncation) for i, c in enumerate(theta.components)}
        return cls.build(theta.root_system, var, truncation, terms)

    @property
    def variable(self) -> Variable:
        return self.cartan[0].variable if self.cartan else self.roots[0].variable

    @property
    def truncation(self) -> int:
        return (self.cartan + self.roots)[0].truncation

    def coefficient(self, label: Label) -> LaurentSeries:
        kind, i = label
        return self.cartan[i] if kind == "h" else self.roots[i]

    def items(self):
        """``(label, series)`` for every basis label, Cartan first."""
        return zip(self.root_system.labels(), self.cartan + self.roots)

    def terms(self):
        """Nonzero ``(label, exponent, coefficient)`` triples in a stable order."""
        for label, s in self.items():
            for k, c in s.items():
                yield label, k, c

    def map(self, fn) -> "LieAlgebraElement":
        """Apply ``fn(label, series)`` to every coefficient and rebuild."""
        new = {label: fn(label, s) for label, s in self.items()}
        var = next(iter(new.values())).variable
        return LieAlgebraElement.build(self.root_system, var, min(s.truncation for s in new.values()), new)

    def truncate(self, n: int) -> "LieAlgebraElement":
        return self.map(lambda _, s: s.truncate(n))

    def is_zero(self) -> bool:
        return all(s.is_zero() for _, s in self.items())

    def _check(self, other):
        if other.root_system != self.root_system:
            raise StructureMismatch("elements of different root systems")
        if not self.variable.compatible(other.variable):
            raise StructureMismatch("elements in different variables")

    def __add__(self, other: "LieAlgebraElement") -> "LieAlgebraElement":
        self._check(other)
        new = {label: a + b for (label, a), (_, b) in zip(self.items(), other.items())}
        return LieAlgebraElement.build(self.root_system, self.variable, self.truncation, new)

    def __neg__(self):
        return self.map(lambda _, s: -s)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.map(lambda _, s: s * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraElement):
            return NotImplemented
        return self.root_system == other.root_system and self.cartan == other.cartan and self.roots == other.roots

    def __hash__(self):
        return hash((self.root_system, self.cartan, self.roots))

    def agrees(self, other: "LieAlgebraElement") -> bool:
        """Coefficientwise equality on the common known range."""
        self._check(other)
        return all(a.agrees(b) for (_, a), (_, b) in zip(self.items(), other.items()))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"LieAlgebraElement({format_element(self)!r})"


def bracket(x: LieAlgebraElement, y: LieAlgebraElement) -> LieAlgebraElement:
    x._check(y)
    rs = x.root_system
    table = rs.structure_constants
    n = min(x.truncation + _val(y), y.truncation + _val(x))
    acc: dict = {}
    for a, sa in x.items():
        if sa.is_zero():
            continue
        for b, sb in y.items():
            if sb.is_zero():
                continue
            try:
                out = table[a, b]
            except KeyError:
                raise StructureMismatch(
                    f"[{label_str(a)}, {label_str(b)}] is not available for {rs}"
                ) from None
            if not out:
                continue
            prod = sa * sb
            for c, k in out.items():
                acc[c] = acc[c] + prod * k if c in acc else prod * k
    return LieAlgebraElement.build(rs, x.variable, n, acc)


def _val(x: LieAlgebraElement) -> int:
    return min(s.valuation() for _, s in x.items())


def format_element(x: LieAlgebraElement) -> str:
    parts = [f"{label_str(label)}: {s}" for label, s in x.items() if not s.is_zero()]
    return "; ".join(parts) if parts else f"0 + O({x.variable.tag}^{x.truncation + 1})"
