"""mu_r-equivariant connections on the trivial G-bundle over the disc in t.

The generator acts by ``t -> zeta**-1 t`` and on the fibre through the torus
element ``theta(zeta)``.  Invariance of ``omega = omega_tilde dt`` reduces to
exponent congruences mod r:

* Cartan coefficients live on exponents ``k = -1 (mod r)``;
* the ``x_alpha`` coefficient lives on ``k = r*alpha(theta) - 1 (mod r)``.

The frame change ``t**theta`` turns such a form into a logahoric connection
``omega_tilde' dz/z`` using ``dt = (1/r) t dz/z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checks import CheckResult, Verdict, Violation
from .errors import ResidueConditionViolated, StructureMismatch
from .parahoric import LogahoricConnection, residue_condition_check
from .rootsys import Coweight, LieAlgebraElement, label_str, pairing
from .series import T, Z, Variable, expand_z_to_t, substitute_t_to_z


@dataclass(frozen=True)
class EquivariantConnectionG:
    theta: Coweight
    omega: LieAlgebraElement  # coefficients of dt, in t

    def __post_init__(self):
        if self.omega.root_system != self.theta.root_system:
            raise StructureMismatch("connection and coweight use different root systems")
        var = self.omega.variable
        if var.tag != T or var.r != self.theta.r:
            raise StructureMismatch(f"equivariant form must be in t with r={self.theta.r}")

    @property
    def r(self) -> int:
        return self.theta.r

    @property
    def root_system(self):
        return self.theta.root_system


def _r_pairing(theta: Coweight, i: int) -> int:
    v = theta.r * pairing(i, theta)
    assert v.denominator == 1
    return int(v)


def allowed_residue(label, theta: Coweight) -> int:
    """The class mod r on which the coefficient of ``label`` may be supported."""
    if label[0] == "h":
        return -1 % theta.r
    return (_r_pairing(theta, label[1]) - 1) % theta.r


def check_invariance(conn: EquivariantConnectionG, holomorphic: bool = False) -> CheckResult:
    """Exponent congruences for mu_r-invariance; optionally also forbid poles."""
    r = conn.r
    bad = []
    for label, s in conn.omega.items():
        want = allowed_residue(label, conn.theta)
        for k in s.exponents():
            if k % r != want:
                bad.append(Violation(label_str(label), k, f"exponent must be {want} mod {r}"))
            elif holomorphic and k < 0:
                bad.append(Violation(label_str(label), k, "pole in t"))
    return CheckResult.collect(bad)


def gauge_by_t_theta(conn: EquivariantConnectionG) -> LogahoricConnection:
    """``Ad t**-theta (omega) + t**-theta d(t**theta)``, rewritten against dz/z in z.

    A non-invariant input surfaces as ``NonIntegralExponent`` when the result
    fails to descend to z.
    """
    theta, r = conn.theta, conn.r

    def transform(label, s):
        # Ad t^-theta scales x_alpha by t^(-r alpha(theta)); dt = (1/r) t dz/z
        shift = 1 if label[0] == "h" else 1 - _r_pairing(theta, label[1])
        out = s.shift(shift) * Fraction(1, r)
        if label[0] == "h":
            out = out + theta.components[label[1]]
        return substitute_t_to_z(out, label_str(label))

    omega_tilde = conn.omega.map(transform)
    return LogahoricConnection(theta, omega_tilde)


def logahoric_to_equivariant(conn: LogahoricConnection) -> EquivariantConnectionG:
    """Undo the ``t**theta`` frame change; needs the residue condition."""
    res = residue_condition_check(conn)
    if res.verdict is not Verdict.TRUE:
        detail = "; ".join(str(v) for v in res.violations) or "; ".join(res.notes)
        raise ResidueConditionViolated(f"residue condition is {res.verdict}: {detail}")
    theta = conn.theta
    r = theta.r

    def transform(label, s):
        if label[0] == "h":
            s = s - theta.components[label[1]]
        t_series = expand_z_to_t(s.with_variable(Variable(Z, r)), r)
        shift = -1 if label[0] == "h" else _r_pairing(theta, label[1]) - 1
        return t_series.shift(shift) * r

    omega = conn.omega_tilde.map(transform)
    return EquivariantConnectionG(theta, omega)


@dataclass(frozen=True)
class LocalType:
    r: int
    residues: tuple

    def __post_init__(self):
        if any(not 0 <= c < self.r for c in self.residues):
            raise ValueError("local type residues must lie in [0, r)")

    def __str__(self):
        return f"r={self.r} residues=({', '.join(str(c) for c in self.residues)})"


def local_type(theta: Coweight) -> LocalType:
    """``r*theta mod r``, the class of the mu_r-action modulo integral coweights."""
    return LocalType(theta.r, tuple(int(c * theta.r) % theta.r for c in theta.components))
