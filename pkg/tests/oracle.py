"""Symbolic reference computations with sympy, independent of the library's gauge code."""

from fractions import Fraction

import sympy

t = sympy.Symbol("t")


def root_pair(rs, vec):
    """Matrix position ``(a, b)`` of the root vector, found from its values on the Cartan basis."""
    n = rs.n
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            if rs.kind == "GL":
                vals = [int(i == a) - int(i == b) for i in range(n)]
            else:
                vals = [int(a == i) - int(a == i + 1) - int(b == i) + int(b == i + 1) for i in range(n - 1)]
            if tuple(vals) == tuple(vec):
                return a, b
    raise ValueError(vec)


def cartan_matrix(rs, i):
    m = sympy.zeros(rs.n, rs.n)
    m[i, i] = 1
    if rs.kind == "A":
        m[i + 1, i + 1] = -1
    return m


def series_expr(s, sym=t):
    return sum((sympy.Rational(c.numerator, c.denominator) * sym**k for k, c in s.items()), sympy.Integer(0))


def element_matrix(x, sym=t):
    """Matrix of a Lie algebra element of sl_n or gl_n, entries sympy Laurent polynomials."""
    rs = x.root_system
    m = sympy.zeros(rs.n, rs.n)
    for label, s in x.items():
        e = series_expr(s, sym)
        if label[0] == "h":
            m += e * cartan_matrix(rs, label[1])
        else:
            a, b = root_pair(rs, rs.roots[label[1]])
            m[a, b] += e
    return m


def diagonal_of(theta):
    """Diagonal entries of theta as a matrix."""
    rs, c = theta.root_system, list(theta.components)
    if rs.kind == "GL":
        return c
    return [c[k] - (c[k - 1] if k else 0) if k < rs.rank else -c[k - 1] for k in range(rs.n)]


def laurent_terms(expr, sym=t):
    """``{exponent: Fraction}`` of a Laurent polynomial."""
    expr = sympy.expand(expr)
    out = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, power = term.as_coeff_exponent(sym)
        out[int(power)] = out.get(int(power), Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return {k: v for k, v in out.items() if v}


def gauge_to_z(omega, exps, r):
    """``(t/r)(g^-1 omega g + g^-1 g')`` with ``g = diag(t**e)``, as z-exponent dicts per entry."""
    n = omega.shape[0]
    g = sympy.diag(*[t**e for e in exps])
    g_inv = sympy.diag(*[t**-e for e in exps])
    a = g_inv * omega * g + g_inv * g.diff(t)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = laurent_terms(a[i, j] * t / r)
            if any(k % r for k in terms):
                raise ValueError("does not descend to z")
            row.append({k // r: c for k, c in terms.items()})
        out.append(row)
    return out


def matrix_terms(m, sym):
    return [[laurent_terms(m[i, j], sym) for j in range(m.shape[1])] for i in range(m.shape[0])]


def sympy_matrix(m, sym=t):
    """A LaurentMatrix as a sympy matrix in ``sym``."""
    return sympy.Matrix(m.n, m.n, lambda i, j: series_expr(m[i, j], sym))
