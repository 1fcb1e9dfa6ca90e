"""Random generators for valid instances, shared by the test modules."""

import random
from fractions import Fraction

import oracle
from logahoric.parabolic import EquivariantMatrixConnection, ParabolicLocalDatum, ParabolicMatrixConnection, min_order
from logahoric.rootsys import Coweight, LieAlgebraElement, m_alpha, pairing
from logahoric.series import LaurentMatrix, LaurentSeries, Variable


def rand_q(rng, size=5):
    return Fraction(rng.randint(-size, size), rng.randint(1, 4))


def rand_series(rng, var, lo, hi, truncation, density=0.6, step=1, size=5):
    """Random series supported on ``lo, lo+step, ... <= min(hi, N)``."""
    coeffs = {}
    k = lo
    while k <= min(hi, truncation):
        if rng.random() < density:
            coeffs[k] = rand_q(rng, size)
        k += step
    return LaurentSeries(var, coeffs, truncation)


def first_in_class(lo, residue, r):
    """Smallest k >= lo with k = residue (mod r)."""
    return lo + (residue - lo) % r


def rand_theta(rng, rs, r, span=1, reduced=False):
    """Random coweight in (1/r)Z; ``reduced`` keeps components in [0, 1)."""
    lo, hi = (0, r - 1) if reduced else (-span * r, span * r)
    comps = [Fraction(rng.randint(lo, hi), r) for _ in range(rs.rank)]
    return Coweight(rs, r, tuple(comps))


def rand_equivariant_element(rng, theta, truncation, density=0.5):
    """Pole-free, mu_r-invariant omega (coefficients of dt) in t."""
    r = theta.r
    var = Variable("t", r)
    terms = {}
    for i in range(theta.root_system.rank):
        terms["h", i] = rand_series(rng, var, first_in_class(0, -1, r), truncation, truncation, density, r)
    for i in range(len(theta.root_system.roots)):
        cls = int(r * pairing(i, theta)) - 1
        terms["x", i] = rand_series(rng, var, first_in_class(0, cls, r), truncation, truncation, density, r)
    return LieAlgebraElement.build(theta.root_system, var, truncation, terms)


def rand_parahoric_element(rng, theta, truncation, density=0.5, depth=4):
    """Random element of the parahoric subalgebra in z."""
    var = Variable("z", theta.r)
    terms = {}
    for i in range(theta.root_system.rank):
        terms["h", i] = rand_series(rng, var, 0, depth, truncation, density)
    for i in range(len(theta.root_system.roots)):
        m = m_alpha(i, theta)
        terms["x", i] = rand_series(rng, var, m, m + depth, truncation, density)
    return LieAlgebraElement.build(theta.root_system, var, truncation, terms)


def rand_residue_element(rng, theta, truncation, density=0.5, depth=4):
    """Random element satisfying the residue condition (closed form of the pole orders)."""
    var = Variable("z", theta.r)
    terms = {}
    for i in range(theta.root_system.rank):
        terms["h", i] = rand_series(rng, var, 1, depth, truncation, density) + theta.components[i]
    for i in range(len(theta.root_system.roots)):
        a = pairing(i, theta)
        lo = m_alpha(i, theta) + (1 if a.denominator == 1 else 0)
        terms["x", i] = rand_series(rng, var, lo, lo + depth, truncation, density)
    return LieAlgebraElement.build(theta.root_system, var, truncation, terms)


def rand_datum(rng, n, r):
    p = sorted((rng.randint(0, r - 1) for _ in range(n)), reverse=True)
    return ParabolicLocalDatum(r, tuple(p))


def rand_equivariant_matrix(rng, datum, truncation, density=0.5):
    r = datum.r
    var = Variable("t", r)
    rows = []
    for i in range(datum.n):
        row = []
        for j in range(datum.n):
            row.append(rand_series(rng, var, min_order(datum, i, j), truncation, truncation, density, r))
        rows.append(row)
    return EquivariantMatrixConnection(datum, LaurentMatrix.build(rows))


def rng(seed):
    return random.Random(seed)


def perturb_weight_zero(rng, xi, theta):
    """Add a nonzero multiple of one weight-zero basis term (breaks the residue condition)."""
    from logahoric.parahoric import weight_piece_basis

    label, k = rng.choice(weight_piece_basis(theta, 0))
    var, n = xi.variable, xi.truncation
    c = rand_q(rng) or Fraction(1)
    bump = LieAlgebraElement.build(xi.root_system, var, n, {label: LaurentSeries.monomial(var, c, k, n)})
    return xi + bump


def rand_parahoric_sample(rng, theta, truncation):
    """Parahoric element that satisfies the residue condition about half the time."""
    xi = rand_residue_element(rng, theta, truncation)
    roll = rng.random()
    if roll < 0.4:
        return xi
    if roll < 0.8:
        return perturb_weight_zero(rng, xi, theta)
    return rand_parahoric_element(rng, theta, truncation)


def rand_parabolic(g, d, n):
    """A parabolic connection built directly in z: flag-compatible residue plus zA part."""
    z = Variable("z", d.r)
    rows = []
    for i in range(d.n):
        row = []
        for j in range(d.n):
            s = rand_series(g, z, 1, n, n, 0.5)
            if i == j:
                s = s + d.alphas[i]
            elif d.alphas[i] > d.alphas[j]:
                s = s + rand_q(g)
            row.append(s)
        rows.append(row)
    return ParabolicMatrixConnection(d, LaurentMatrix.build(rows))


def gl_element(rs, m):
    """A gl_n matrix over t as a Lie algebra element."""
    var, n = m.variable, m.truncation
    terms = {("h", i): m[i, i] for i in range(rs.n)}
    for k, vec in enumerate(rs.roots):
        a, b = oracle.root_pair(rs, vec)
        terms["x", k] = m[a, b]
    return LieAlgebraElement.build(rs, var, n, terms)


def gl_matrix(x):
    rs = x.root_system
    cells = [[None] * rs.n for _ in range(rs.n)]
    for i in range(rs.n):
        cells[i][i] = x.coefficient(("h", i))
    for k, vec in enumerate(rs.roots):
        a, b = oracle.root_pair(rs, vec)
        cells[a][b] = x.coefficient(("x", k))
    return LaurentMatrix.build(cells)
