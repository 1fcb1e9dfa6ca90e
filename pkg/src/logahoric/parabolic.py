"""The vector bundle case: equivariant matrix connections vs parabolic connections.

Frame convention: the mu_r-weights ``p_1 >= p_2 >= ... >= p_n`` with
``gamma . e_j = zeta**p_j e_j``.  The pushed-forward frame is
``f_j = t**p_j e_j``, and flag step ``E_i`` is spanned by the leading
``j_i`` frame vectors.  Equivariant forms are stored against ``dt`` (in t),
parabolic ones against ``dz/z`` (in z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checks import CheckResult, Verdict, Violation
from .errors import InvalidDatum, ParabolicConditionViolated, StructureMismatch, TruncationExhausted
from .series import T, Z, LaurentMatrix, LaurentSeries, Variable, expand_z_to_t, substitute_t_to_z


@dataclass(frozen=True)
class ParabolicLocalDatum:
    r: int
    weights: tuple  # p_1 >= ... >= p_n
    permutation: tuple = None  # sorted position k came from input index permutation[k]

    def __post_init__(self):
        p = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", p)
        if self.r < 1:
            raise InvalidDatum("r must be positive")
        if not p:
            raise InvalidDatum("weight vector is empty")
        if any(not 0 <= x <= self.r - 1 for x in p):
            raise InvalidDatum(f"weights must satisfy 0 <= p_j <= r-1 = {self.r - 1}, got {list(p)}")
        if any(a < b for a, b in zip(p, p[1:])):
            raise InvalidDatum(f"weights must be weakly decreasing p_1 >= ... >= p_n, got {list(p)}")
        perm = tuple(range(len(p))) if self.permutation is None else tuple(self.permutation)
        if sorted(perm) != list(range(len(p))):
            raise InvalidDatum("permutation is not a permutation of the frame")
        object.__setattr__(self, "permutation", perm)

    @classmethod
    def from_weights(cls, weights, r: int) -> "ParabolicLocalDatum":
        """Sort arbitrary weights into decreasing order, recording the permutation."""
        weights = [int(x) for x in weights]
        perm = sorted(range(len(weights)), key=lambda j: -weights[j])
        return cls(r, tuple(weights[j] for j in perm), tuple(perm))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def original_weights(self) -> tuple:
        out = [0] * self.n
        for k, j in enumerate(self.permutation):
            out[j] = self.weights[k]
        return tuple(out)

    @property
    def alphas(self) -> tuple:
        """Rational weight ``p_j / r`` at each frame position."""
        return tuple(Fraction(p, self.r) for p in self.weights)

    def jumps(self) -> list:
        """``[(j_i, m_i)]`` for ``i = 1..k``: ``j_1 = n > j_2 > ... > j_k``, ``m_i = p_{j_i}``."""
        out = []
        j = self.n
        while j > 0:
            m = self.weights[j - 1]
            out.append((j, m))
            while j > 0 and self.weights[j - 1] == m:
                j -= 1
        return out


@dataclass(frozen=True)
class FlagStep:
    dim: int  # j_i, E_i is spanned by f_1..f_{j_i}
    weight: Fraction  # alpha_i = m_i / r
    graded: tuple  # 0-based frame indices spanning E_i / E_{i+1}


def flag_from_weights(datum: ParabolicLocalDatum) -> list:
    """Weighted flag ``E_1 = fibre > E_2 > ... > E_k``; weights increase along it."""
    jumps = datum.jumps()
    steps = []
    for i, (j, m) in enumerate(jumps):
        lower = jumps[i + 1][0] if i + 1 < len(jumps) else 0
        steps.append(FlagStep(j, Fraction(m, datum.r), tuple(range(lower, j))))
    return steps


@dataclass(frozen=True)
class EquivariantMatrixConnection:
    datum: ParabolicLocalDatum
    omega: LaurentMatrix  # coefficients of dt, in t

    def __post_init__(self):
        v = self.omega.variable
        if v.tag != T or v.r != self.datum.r:
            raise StructureMismatch(f"equivariant matrix must be in t with r={self.datum.r}")
        if self.omega.n != self.datum.n:
            raise StructureMismatch("matrix size does not match the weight vector")


@dataclass(frozen=True)
class ParabolicMatrixConnection:
    datum: ParabolicLocalDatum
    D: LaurentMatrix  # coefficients of dz/z, in z

    def __post_init__(self):
        if self.D.variable.tag != Z:
            raise StructureMismatch("parabolic connection matrix must be in z")
        if self.D.n != self.datum.n:
            raise StructureMismatch("matrix size does not match the weight vector")

    @property
    def residue(self) -> list:
        return residue(self)


def min_order(datum: ParabolicLocalDatum, i: int, j: int) -> int:
    """Smallest exponent allowed in ``omega_ij``: the pole-free representative of its class."""
    d = datum.weights[i] - datum.weights[j] - 1
    return d if datum.weights[i] > datum.weights[j] else d + datum.r


def check_matrix_equivariance(conn: EquivariantMatrixConnection) -> CheckResult:
    datum, r = conn.datum, conn.datum.r
    bad = []
    for i in range(datum.n):
        for j in range(datum.n):
            want = (datum.weights[i] - datum.weights[j] - 1) % r
            lo = min_order(datum, i, j)
            for k in conn.omega[i, j].exponents():
                name = f"omega[{i + 1}][{j + 1}]"
                if k % r != want:
                    bad.append(Violation(name, k, f"exponent must be {want} mod {r}"))
                elif k < lo:
                    bad.append(Violation(name, k, f"order must be >= {lo}"))
    return CheckResult.collect(bad)


def _gauge_matrix(datum: ParabolicLocalDatum, truncation: int) -> LaurentMatrix:
    var = Variable(T, datum.r)
    return LaurentMatrix.diagonal([LaurentSeries.monomial(var, 1, p, truncation) for p in datum.weights])


def pushforward_connection(conn: EquivariantMatrixConnection) -> ParabolicMatrixConnection:
    """``g^-1 omega g + g^-1 dg`` for ``g = diag(t**p_j)``, then ``dt = (1/r) t dz/z`` and ``t**r = z``."""
    datum, omega = conn.datum, conn.omega
    # monomials are exact; give them enough room not to limit the products
    g = _gauge_matrix(datum, omega.truncation + 2 * datum.r + 2)
    g_inv = LaurentMatrix.diagonal([g[i, i].inverse() for i in range(datum.n)])
    a = g_inv @ omega @ g + g_inv @ g.derivative()
    a = a.map(lambda i, j, s: s.shift(1) * Fraction(1, datum.r))
    return ParabolicMatrixConnection(
        datum, a.map(lambda i, j, s: substitute_t_to_z(s, f"D[{i + 1}][{j + 1}]"))
    )


def residue(conn: ParabolicMatrixConnection) -> list:
    """Constant term of the ``dz/z`` matrix."""
    return conn.D.constant_term()


def closed_form_residue(conn: EquivariantMatrixConnection) -> list:
    """Residue read off the equivariant form directly.

    Entry ``(i, j)`` is ``nu_ij(0) / r`` when ``p_i > p_j`` (``nu_ij(0)`` being the
    lowest allowed coefficient of ``omega_ij``), and ``delta_ij p_i / r`` otherwise.
    """
    datum = conn.datum
    n, r, p = datum.n, datum.r, datum.weights
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if p[i] > p[j]:
                row.append(conn.omega[i, j].coefficient(p[i] - p[j] - 1) / r)
            else:
                row.append(Fraction(p[i], r) if i == j else Fraction(0))
        out.append(row)
    return out


def check_residue_matrix(datum: ParabolicLocalDatum, res) -> CheckResult:
    """Flag condition on a residue: scalar ``alpha_i`` on each graded block, zero where weight rises."""
    alphas = datum.alphas
    bad = []
    for i in range(datum.n):
        for j in range(datum.n):
            c = Fraction(res[i][j])
            name = f"Res[{i + 1}][{j + 1}]"
            if alphas[i] == alphas[j]:
                want = alphas[i] if i == j else Fraction(0)
                if c != want:
                    bad.append(Violation(name, None, f"graded piece must act as {want}, found {c}"))
            elif alphas[i] < alphas[j] and c:
                bad.append(Violation(name, None, f"residue must map E_i into E_(i+1), found {c}"))
    return CheckResult.collect(bad)


def parabolic_condition_check(conn: ParabolicMatrixConnection) -> CheckResult:
    """Logarithmic poles only, and the residue respects the weighted flag."""
    bad = []
    for i in range(conn.D.n):
        for j in range(conn.D.n):
            for k in conn.D[i, j].exponents():
                if k < 0:
                    bad.append(Violation(f"D[{i + 1}][{j + 1}]", k, "pole of order > 1"))
    try:
        res = residue(conn)
    except TruncationExhausted as exc:
        return CheckResult.collect(bad, (str(exc),))
    flag = check_residue_matrix(conn.datum, res)
    return CheckResult.collect(bad + list(flag.violations))


def pullback_connection(conn: ParabolicMatrixConnection) -> EquivariantMatrixConnection:
    """Inverse frame change ``e_j = t**-p_j f_j``."""
    check = parabolic_condition_check(conn)
    if check.verdict is not Verdict.TRUE:
        detail = "; ".join(str(v) for v in check.violations) or "; ".join(check.notes)
        raise ParabolicConditionViolated(f"parabolic condition is {check.verdict}: {detail}")
    datum, r = conn.datum, conn.datum.r
    # against dt: D dz/z = r D t^-1 dt
    a = conn.D.map(lambda i, j, s: expand_z_to_t(s.with_variable(Variable(Z, r)), r).shift(-1) * r)
    g = _gauge_matrix(datum, a.truncation + 2 * r + 2)
    g_inv = LaurentMatrix.diagonal([g[i, i].inverse() for i in range(datum.n)])
    omega = g @ a @ g_inv - g.derivative() @ g_inv
    return EquivariantMatrixConnection(datum, omega)


def permute_matrix(m: LaurentMatrix, perm) -> LaurentMatrix:
    """Reorder a matrix given in input order into the sorted frame of a datum."""
    return LaurentMatrix([[m[perm[a], perm[b]] for b in range(m.n)] for a in range(m.n)])


def is_horizontal_morphism_t(psi: LaurentMatrix, src: LaurentMatrix, tgt: LaurentMatrix) -> bool:
    """``d psi/dt + tgt psi - psi src = 0`` for forms against dt."""
    lhs = psi.derivative() + tgt @ psi - psi @ src
    return all(s.is_zero() for row in lhs.entries for s in row)


def is_horizontal_morphism_z(phi: LaurentMatrix, src: LaurentMatrix, tgt: LaurentMatrix) -> bool:
    """``z d phi/dz + tgt phi - phi src = 0`` for forms against dz/z."""
    z_dphi = phi.derivative().map(lambda i, j, s: s.shift(1))
    lhs = z_dphi + tgt @ phi - phi @ src
    return all(s.is_zero() for row in lhs.entries for s in row)


def pushforward_morphism(
    psi: LaurentMatrix, src: ParabolicLocalDatum, tgt: ParabolicLocalDatum
) -> LaurentMatrix:
    """Matrix of a morphism in the pushed-forward frames: ``g_tgt^-1 psi g_src``."""
    n = psi.truncation + 2 * max(src.r, tgt.r) + 2
    g_src = _gauge_matrix(src, n)
    g_tgt = _gauge_matrix(tgt, n)
    g_tgt_inv = LaurentMatrix.diagonal([g_tgt[i, i].inverse() for i in range(tgt.n)])
    phi = g_tgt_inv @ psi @ g_src
    return phi.map(lambda i, j, s: substitute_t_to_z(s, f"phi[{i + 1}][{j + 1}]"))
