"""Parahoric Lie algebras, weight pieces and the residue condition.

Everything here lives in the base variable ``z``.  For a coweight ``theta``
the parahoric subalgebra is

    t(A) + sum_alpha g_alpha(z**m_alpha A),   m_alpha = -floor(alpha(theta)),

and the term ``x_alpha z**i`` has weight ``alpha(theta) + i`` (a Cartan term
``h z**i`` has weight ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .checks import CheckResult, Verdict, Violation
from .errors import LogahoricError, NotParahoric, StructureMismatch, TruncationExhausted
from .rootsys import Coweight, LieAlgebraElement, label_str, m_alpha, pairing
from .series import Z, LaurentSeries


def _require_z(xi: LieAlgebraElement):
    if xi.variable.tag != Z:
        raise StructureMismatch("parahoric computations need an element in z")


def _order_at_least(label, s: LaurentSeries, bound: int, what: str):
    """Violations and undecided notes for the requirement ``ord(s) >= bound``."""
    bad = [Violation(label_str(label), k, f"{what} needs order >= {bound}") for k in s.exponents() if k < bound]
    undecided = []
    if not bad and bound - 1 > s.truncation:
        undecided.append(f"{label_str(label)}: order >= {bound} needs coefficients up to {bound - 1}, known to {s.truncation}")
    return bad, undecided


@dataclass(frozen=True)
class ParahoricAlgebra:
    theta: Coweight
    orders: dict = field(init=False, compare=False)

    def __post_init__(self):
        rs = self.theta.root_system
        object.__setattr__(self, "orders", {i: m_alpha(i, self.theta) for i in range(len(rs.roots))})

    @property
    def root_system(self):
        return self.theta.root_system

    def contains(self, xi: LieAlgebraElement) -> CheckResult:
        return parahoric_membership(xi, self.theta)


def parahoric_membership(xi: LieAlgebraElement, theta: Coweight) -> CheckResult:
    """Is ``xi`` in the parahoric subalgebra? Violations name the offending terms."""
    _require_z(xi)
    bad, undecided = [], []
    for label, s in xi.items():
        bound = 0 if label[0] == "h" else m_alpha(label[1], theta)
        b, u = _order_at_least(label, s, bound, "parahoric")
        bad += b
        undecided += u
    return CheckResult.collect(bad, undecided)


def term_weight(label, exponent: int, theta: Coweight) -> Fraction:
    if label[0] == "h":
        return Fraction(exponent)
    return pairing(label[1], theta) + exponent


def weight_piece_membership(xi: LieAlgebraElement, lam, theta: Coweight) -> bool:
    """True iff every stored term of ``xi`` has weight ``lam``."""
    _require_z(xi)
    lam = Fraction(lam)
    return all(term_weight(label, k, theta) == lam for label, k, _ in xi.terms())


def weight_piece_basis(theta: Coweight, lam) -> list:
    """``(label, exponent)`` pairs spanning the weight-``lam`` piece of g(K).

    Finite: each basis label contributes at most one exponent.
    """
    lam = Fraction(lam)
    rs = theta.root_system
    out = []
    if lam.denominator == 1:
        out += [(("h", i), int(lam)) for i in range(rs.rank)]
    for i in range(len(rs.roots)):
        k = lam - pairing(i, theta)
        if k.denominator == 1:
            out.append((("x", i), int(k)))
    return out


def attained_weights(theta: Coweight, truncation: int) -> list:
    """All weights ``alpha(theta) + i`` and ``i`` inside ``[-N, N]``, sorted."""
    rs = theta.root_system
    shifts = {Fraction(0)} | {pairing(i, theta) for i in range(len(rs.roots))}
    n = truncation
    out = set()
    for s in shifts:
        for i in range(-n - abs(int(s)) - 1, n + abs(int(s)) + 2):
            if -n <= s + i <= n:
                out.add(s + i)
    return sorted(out)


def weight_decomposition(xi: LieAlgebraElement, theta: Coweight) -> dict:
    """Split the stored terms of ``xi`` by weight: ``{lam: element}``."""
    _require_z(xi)
    pieces: dict = {}
    for label, k, c in xi.terms():
        pieces.setdefault(term_weight(label, k, theta), {}).setdefault(label, {})[k] = c
    var, n = xi.variable, xi.truncation
    return {
        lam: LieAlgebraElement.build(
            xi.root_system, var, n, {label: LaurentSeries(var, cs, n) for label, cs in terms.items()}
        )
        for lam, terms in sorted(pieces.items())
    }


def weight_zero_projection(xi: LieAlgebraElement, theta: Coweight) -> LieAlgebraElement:
    """Keep the Cartan constant terms and the ``x_alpha z**(-alpha(theta))`` terms."""
    _require_z(xi)
    var, n = xi.variable, xi.truncation
    terms = {}
    for label, k in weight_piece_basis(theta, 0):
        s = xi.coefficient(label)
        c = s.coefficient(k)  # raises TruncationExhausted above N
        if c:
            terms[label] = LaurentSeries.monomial(var, c, k, n)
    return LieAlgebraElement.build(xi.root_system, var, n, terms)


@dataclass(frozen=True)
class LogahoricConnection:
    """The connection form ``omega_tilde dz/z`` with ``omega_tilde`` in the parahoric."""

    theta: Coweight
    omega_tilde: LieAlgebraElement

    def __post_init__(self):
        if self.omega_tilde.root_system != self.theta.root_system:
            raise StructureMismatch("connection and coweight use different root systems")
        res = parahoric_membership(self.omega_tilde, self.theta)
        if res.verdict is Verdict.FALSE:
            raise NotParahoric("; ".join(str(v) for v in res.violations))

    @property
    def parahoric(self) -> ParahoricAlgebra:
        return ParahoricAlgebra(self.theta)


def residue_condition_by_definition(conn: LogahoricConnection) -> CheckResult:
    """Weight-zero piece of ``omega_tilde`` equals ``theta``."""
    xi, theta = conn.omega_tilde, conn.theta
    try:
        w0 = weight_zero_projection(xi, theta)
    except TruncationExhausted as exc:
        return CheckResult(Verdict.INDETERMINATE, (), (str(exc),))
    target = LieAlgebraElement.from_coweight(theta, xi.variable, xi.truncation)
    bad = []
    for (label, a), (_, b) in zip(w0.items(), target.items()):
        for k in sorted(set(a.exponents()) | set(b.exponents())):
            if a.coefficient(k) != b.coefficient(k):
                bad.append(
                    Violation(label_str(label), k, f"weight-zero coefficient {a.coefficient(k)} != {b.coefficient(k)}")
                )
    return CheckResult.collect(bad)


def residue_condition_by_lemma(conn: LogahoricConnection) -> CheckResult:
    """Explicit pole orders: Cartan part minus theta in zA; integral roots one order deeper."""
    xi, theta = conn.omega_tilde, conn.theta
    bad, undecided = [], []
    for label, s in xi.items():
        if label[0] == "h":
            s = s - theta.components[label[1]]
            bound = 1
        else:
            a = pairing(label[1], theta)
            bound = m_alpha(label[1], theta) + (1 if a.denominator == 1 else 0)
        b, u = _order_at_least(label, s, bound, "residue condition")
        bad += b
        undecided += u
    return CheckResult.collect(bad, undecided)


def residue_condition_check(conn: LogahoricConnection) -> CheckResult:
    """Residue condition, computed both ways; raises if the two computations disagree."""
    member = parahoric_membership(conn.omega_tilde, conn.theta)
    if member.verdict is Verdict.FALSE:
        raise NotParahoric("; ".join(str(v) for v in member.violations))
    by_def = residue_condition_by_definition(conn)
    by_lemma = residue_condition_by_lemma(conn)
    decided = Verdict.INDETERMINATE not in (by_def.verdict, by_lemma.verdict)
    if decided and by_def.verdict is not by_lemma.verdict:
        raise LogahoricError(
            f"residue condition: definition says {by_def.verdict}, closed form says {by_lemma.verdict}"
        )
    if member.verdict is Verdict.INDETERMINATE and by_lemma.verdict is Verdict.TRUE:
        return CheckResult(Verdict.INDETERMINATE, (), member.notes)
    return by_lemma
