from fractions import Fraction as F

import pytest

import oracle
from helpers import rand_equivariant_element, rand_residue_element, rand_theta, rng
from logahoric.checks import Verdict
from logahoric.equivariant import (
    EquivariantConnectionG,
    LocalType,
    allowed_residue,
    check_invariance,
    gauge_by_t_theta,
    local_type,
    logahoric_to_equivariant,
)
from logahoric.errors import NonIntegralExponent, ResidueConditionViolated, StructureMismatch
from logahoric.parahoric import LogahoricConnection, residue_condition_check
from logahoric.rootsys import Coweight, LieAlgebraElement, RootSystem
from logahoric.series import LaurentSeries, Variable

SL2 = RootSystem.type_A(1)
SL3 = RootSystem.type_A(2)
GL3 = RootSystem.gl(3)
T2 = Variable("t", 2)
HALF = Coweight(SL2, 2, (F(1, 2),))
XA, XB, H = ("x", 0), ("x", 1), ("h", 0)


def elem(terms, rs=SL2, var=T2, n=12):
    return LieAlgebraElement.build(rs, var, n, {lab: LaurentSeries(var, cs, n) for lab, cs in terms.items()})


def test_invariance_examples():
    for r in (1, 2, 3, 5):
        zero = Coweight.zero(SL2, r)
        var = Variable("t", r)
        assert check_invariance(EquivariantConnectionG(zero, elem({H: {r - 1: 1}}, var=var))).ok
        assert check_invariance(EquivariantConnectionG(zero, elem({}, var=var))).ok
    assert check_invariance(EquivariantConnectionG(HALF, elem({XA: {1: 1}}))).ok
    res = check_invariance(EquivariantConnectionG(HALF, elem({XA: {0: 1}})))
    assert res.verdict is Verdict.FALSE
    assert [(v.label, v.exponent) for v in res.violations] == [("x[1]", 0)]


def test_invariance_holomorphic_flag():
    conn = EquivariantConnectionG(HALF, elem({H: {-1: 1}}))
    assert check_invariance(conn).ok
    assert not check_invariance(conn, holomorphic=True).ok


def test_wrong_variable_rejected():
    with pytest.raises(StructureMismatch):
        EquivariantConnectionG(HALF, elem({}, var=Variable("t", 3)))


def test_gauge_of_zero_is_theta():
    for r in (1, 2, 3, 4):
        g = rng(r)
        for rs in (SL2, SL3, GL3):
            theta = rand_theta(g, rs, r)
            conn = EquivariantConnectionG(theta, elem({}, rs=rs, var=Variable("t", r)))
            out = gauge_by_t_theta(conn).omega_tilde
            assert out.agrees(LieAlgebraElement.from_coweight(theta, out.variable, out.truncation))


def test_gauge_example_sl2():
    conn = EquivariantConnectionG(HALF, elem({XB: {3: 1}}))
    out = gauge_by_t_theta(conn).omega_tilde
    assert out.coefficient(H).items() == ((0, F(1, 2)),)
    assert out.coefficient(XB).items() == ((3, F(1, 2)),)
    assert out.coefficient(XA).is_zero()
    assert residue_condition_check(gauge_by_t_theta(conn)).ok
    back = logahoric_to_equivariant(gauge_by_t_theta(conn))
    assert back.omega.agrees(conn.omega)


def test_gauge_rejects_non_invariant():
    with pytest.raises(NonIntegralExponent):
        gauge_by_t_theta(EquivariantConnectionG(HALF, elem({XA: {0: 1}})))


def test_inverse_examples():
    theta_elem = LieAlgebraElement.from_coweight(HALF, Variable("z", 2), 8)
    back = logahoric_to_equivariant(LogahoricConnection(HALF, theta_elem))
    assert back.omega.is_zero()
    bad = theta_elem + LieAlgebraElement.build(SL2, Variable("z", 2), 8, {H: LaurentSeries(Variable("z", 2), {0: 1}, 8)})
    with pytest.raises(ResidueConditionViolated):
        logahoric_to_equivariant(LogahoricConnection(HALF, bad))


@pytest.mark.parametrize("rs", [SL2, SL3, GL3])
def test_gauge_matches_symbolic_oracle(rs):
    g = rng(len(rs.roots))
    for trial in range(12):
        r = (2, 3, 4)[trial % 3]
        theta = rand_theta(g, rs, r)
        omega = rand_equivariant_element(g, theta, 10, density=0.4)
        out = gauge_by_t_theta(EquivariantConnectionG(theta, omega)).omega_tilde
        exps = [int(d * r) for d in oracle.diagonal_of(theta)]
        want = oracle.gauge_to_z(oracle.element_matrix(omega), exps, r)
        got = oracle.matrix_terms(oracle.element_matrix(out, oracle.t), oracle.t)
        n = out.truncation
        for i in range(rs.n):
            for j in range(rs.n):
                assert got[i][j] == {k: c for k, c in want[i][j].items() if k <= n}


def forward_truncation(theta, n):
    """z-truncation after the frame change: each coefficient shifts, then t**r = z."""
    rs, r = theta.root_system, theta.r
    shifts = [1] * rs.rank + [1 - int(r * sum(a * c for a, c in zip(v, theta.components))) for v in rs.roots]
    return min((n + s) // r for s in shifts)


@pytest.mark.parametrize("rs", [SL2, SL3, GL3])
@pytest.mark.parametrize("r", [2, 3, 4])
def test_round_trip_from_equivariant(rs, r):
    g = rng(100 * r + rs.rank)
    for _ in range(15):
        theta = rand_theta(g, rs, r, reduced=True)
        omega = rand_equivariant_element(g, theta, 12)
        conn = EquivariantConnectionG(theta, omega)
        assert check_invariance(conn).ok
        log = gauge_by_t_theta(conn)
        assert residue_condition_check(log).verdict is Verdict.TRUE
        back = logahoric_to_equivariant(log)
        assert back.omega.agrees(omega)
        assert log.omega_tilde.truncation == forward_truncation(theta, 12)
        assert back.omega.truncation >= 0


@pytest.mark.parametrize("rs", [SL2, SL3, GL3])
@pytest.mark.parametrize("r", [2, 3, 4])
def test_round_trip_from_logahoric(rs, r):
    g = rng(7 * r + rs.rank)
    for _ in range(15):
        theta = rand_theta(g, rs, r, reduced=True)
        xi = rand_residue_element(g, theta, 12)
        back = logahoric_to_equivariant(LogahoricConnection(theta, xi))
        assert check_invariance(back).ok
        again = gauge_by_t_theta(back).omega_tilde
        assert again.agrees(xi)
        assert xi.truncation - 3 <= again.truncation <= xi.truncation


def test_mutations_detected():
    g = rng(8)
    for trial in range(300):
        rs = (SL2, SL3, GL3)[trial % 3]
        r = (2, 3, 4)[trial % 3]
        theta = rand_theta(g, rs, r)
        omega = rand_equivariant_element(g, theta, 12)
        label = g.choice(rs.labels())
        k = g.randint(-3, 12)
        if k % r == allowed_residue(label, theta):
            k -= 1
        var = omega.variable
        bump = LieAlgebraElement.build(rs, var, 12, {label: LaurentSeries.monomial(var, g.choice([1, -2, F(1, 3)]), k, 12)})
        res = check_invariance(EquivariantConnectionG(theta, omega + bump))
        assert res.verdict is Verdict.FALSE
        assert any(v.exponent == k for v in res.violations)


def test_local_type_examples():
    assert local_type(Coweight.zero(SL3, 3)) == LocalType(3, (0, 0))
    assert local_type(HALF).residues == (1,)
    g = rng(4)
    for _ in range(40):
        theta = rand_theta(g, SL3, g.choice([2, 3, 4, 6]))
        shifted = theta + Coweight(SL3, 1, (g.randint(-3, 3), g.randint(-3, 3)))
        assert local_type(shifted) == local_type(theta)
    with pytest.raises(ValueError):
        LocalType(2, (2,))
