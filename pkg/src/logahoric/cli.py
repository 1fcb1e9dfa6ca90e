"""Command line driver.

Exit codes: 0 success / verdict true, 1 verdict false, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction

from . import degree, equivariant, parabolic, parahoric, rootsys
from .checks import CheckResult, Verdict
from .errors import (
    LogahoricError,
    NonIntegralExponent,
    NotParahoric,
    ParabolicConditionViolated,
    ParseError,
    ResidueConditionViolated,
    TruncationExhausted,
)
from .problem import ProblemFile, parse_problem
from .rootsys import LieAlgebraElement, label_str
from .series import NOT_HOMOGENEOUS, format_series, mu_r_weight

# which library operations each subcommand exercises
COMMAND_OPERATIONS = {
    ("parahoric", "check"): [
        "pairing", "m_alpha", "theta_eigenspace", "bracket", "parahoric_membership",
        "weight_piece_membership", "weight_zero_projection", "residue_condition_check",
    ],
    ("equiv", "check"): ["check_invariance", "mu_r_weight"],
    ("equiv", "to-logahoric"): ["gauge_by_t_theta", "substitute_t_to_z", "series_mul", "series_add"],
    ("equiv", "from-logahoric"): ["logahoric_to_equivariant"],
    ("equiv", "local-type"): ["local_type"],
    ("parab", "push"): [
        "pushforward_connection", "series_inverse", "series_derivative", "series_mul", "residue",
        "parabolic_condition_check",
    ],
    ("parab", "pull"): ["pullback_connection"],
    ("parab", "check"): ["flag_from_weights", "check_matrix_equivariance", "parabolic_condition_check"],
    ("parab", "residue"): ["residue", "pushforward_connection"],
    ("degree", "pardeg"): ["par_deg", "line_connection_exists"],
    ("degree", "criterion"): ["character_line_degree", "weil_atiyah_check"],
}


def _q(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _vec(v) -> str:
    return "(" + ", ".join(_q(c) for c in v) + ")"


def _matrix(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(_q(c) for c in row) + "]" for row in rows) + "]"


def _element_lines(x: LieAlgebraElement, indent="  ") -> list:
    items = [(label, s) for label, s in x.items() if not s.is_zero()]
    if not items:
        return [f"{indent}0 + O({x.variable.tag}^{x.truncation + 1})"]
    return [f"{indent}{label_str(label)} : {format_series(s)}" for label, s in items]


def _check_lines(res: CheckResult, indent="  ") -> list:
    return [f"{indent}violation: {v}" for v in res.violations] + [f"{indent}undecided: {n}" for n in res.notes]


def _header(prob: ProblemFile, out):
    if prob.root_system is not None:
        out.append(f"algebra: {prob.root_system}")
    if prob.theta is not None:
        out.append(f"theta: {prob.theta} (r = {prob.theta.r})")


def _code(verdict) -> int:
    if isinstance(verdict, Verdict):
        return 0 if verdict is Verdict.TRUE else 1
    return 0 if verdict else 1


# parahoric


def cmd_parahoric_check(prob: ProblemFile, out) -> int:
    prob.require("root_system", "theta", "element")
    theta, xi = prob.theta, prob.element
    if xi.variable.tag != "z":
        raise ParseError("parahoric check needs an element in z")
    rs = theta.root_system
    _header(prob, out)
    out.append("roots:")
    for i, a in enumerate(rs.roots):
        out.append(
            f"  x[{i + 1}] alpha = {_vec(a)}  alpha(theta) = {_q(rootsys.pairing(i, theta))}"
            f"  m_alpha = {rootsys.m_alpha(i, theta)}"
        )
    eig = rootsys.theta_eigenspace(theta, 0)
    out.append("centralizer of theta: " + " ".join(label_str(l) for l in eig))
    out.append("element:")
    out += _element_lines(xi)
    member = parahoric.parahoric_membership(xi, theta)
    out.append(f"parahoric membership: {member.verdict}")
    out += _check_lines(member)
    out.append(f"weight zero: {str(parahoric.weight_piece_membership(xi, 0, theta)).lower()}")
    try:
        w0 = parahoric.weight_zero_projection(xi, theta)
        out.append("weight zero projection:")
        out += _element_lines(w0)
    except TruncationExhausted as exc:
        out.append(f"weight zero projection: unavailable ({exc})")
    if member.verdict is Verdict.FALSE:
        out.append("residue condition: skipped (not in the parahoric)")
    else:
        conn = parahoric.LogahoricConnection(theta, xi)
        by_def = parahoric.residue_condition_by_definition(conn)
        by_lemma = parahoric.residue_condition_by_lemma(conn)
        res = parahoric.residue_condition_check(conn)
        out.append(f"residue condition: {res.verdict} (definition: {by_def.verdict}, pole orders: {by_lemma.verdict})")
        out += _check_lines(res)
    if prob.element2 is not None:
        eta = prob.element2
        br = rootsys.bracket(xi, eta)
        out.append("bracket with element2:")
        out += _element_lines(br)
        closed = parahoric.parahoric_membership(br, theta)
        out.append(f"bracket membership: {closed.verdict}")
    out.append(f"verdict: {member.verdict}")
    return _code(member.verdict)


# equivariant


def _equiv_conn(prob: ProblemFile):
    prob.require("root_system", "theta", "element")
    if prob.element.variable.tag != "t":
        raise ParseError("equivariant connections are given in t")
    return equivariant.EquivariantConnectionG(prob.theta, prob.element)


def cmd_equiv_check(prob: ProblemFile, out) -> int:
    conn = _equiv_conn(prob)
    _header(prob, out)
    out.append("allowed exponent classes mod r:")
    for label, s in conn.omega.items():
        w = "-" if s.is_zero() else equivariant_weight(s)
        out.append(f"  {label_str(label)}: {equivariant.allowed_residue(label, conn.theta)}  (mu_r weight of coefficient: {w})")
    res = equivariant.check_invariance(conn)
    out.append(f"invariant: {res.verdict}")
    out += _check_lines(res)
    poles = equivariant.check_invariance(conn, holomorphic=True)
    out.append(f"invariant and pole-free: {poles.verdict}")
    return _code(res.verdict)


def equivariant_weight(s):
    w = mu_r_weight(s)
    return "not homogeneous" if w is NOT_HOMOGENEOUS else str(w)


def cmd_equiv_to_logahoric(prob: ProblemFile, out) -> int:
    conn = _equiv_conn(prob)
    _header(prob, out)
    try:
        log = equivariant.gauge_by_t_theta(conn)
    except NonIntegralExponent as exc:
        out.append(f"not mu_r-invariant: {exc}")
        return 1
    out.append("logahoric omega_tilde (coefficient of dz/z):")
    out += _element_lines(log.omega_tilde)
    res = parahoric.residue_condition_check(log)
    out.append(f"residue condition: {res.verdict}")
    out += _check_lines(res)
    return 0


def cmd_equiv_from_logahoric(prob: ProblemFile, out) -> int:
    prob.require("root_system", "theta", "element")
    if prob.element.variable.tag != "z":
        raise ParseError("logahoric connections are given in z")
    _header(prob, out)
    try:
        conn = parahoric.LogahoricConnection(prob.theta, prob.element)
        eq = equivariant.logahoric_to_equivariant(conn)
    except (ResidueConditionViolated, NotParahoric) as exc:
        out.append(f"rejected: {exc}")
        return 1
    out.append("equivariant omega (coefficient of dt):")
    out += _element_lines(eq.omega)
    res = equivariant.check_invariance(eq, holomorphic=True)
    out.append(f"invariant and pole-free: {res.verdict}")
    return 0


def cmd_equiv_local_type(prob: ProblemFile, out) -> int:
    prob.require("root_system", "theta")
    _header(prob, out)
    out.append(f"local type: {equivariant.local_type(prob.theta)}")
    return 0


# parabolic


def _flag_lines(datum) -> list:
    lines = [f"weights p: {list(datum.weights)} (r = {datum.r})", "flag:"]
    for i, step in enumerate(parabolic.flag_from_weights(datum), 1):
        graded = ",".join(str(j + 1) for j in step.graded)
        lines.append(f"  E_{i}: dim {step.dim}  weight {_q(step.weight)}  graded frame indices {{{graded}}}")
    return lines


def _matrix_lines(m, name) -> list:
    return [f"  {name}[{i + 1}][{j + 1}] = {format_series(m[i, j])}" for i in range(m.n) for j in range(m.n)]


def cmd_parab_check(prob: ProblemFile, out) -> int:
    prob.require("datum", "matrix")
    out += _flag_lines(prob.datum)
    if prob.matrix.variable.tag == "t":
        res = parabolic.check_matrix_equivariance(parabolic.EquivariantMatrixConnection(prob.datum, prob.matrix))
        out.append(f"equivariant and pole-free: {res.verdict}")
    else:
        conn = parabolic.ParabolicMatrixConnection(prob.datum, prob.matrix)
        res = parabolic.parabolic_condition_check(conn)
        out.append(f"parabolic connection: {res.verdict}")
    out += _check_lines(res)
    return _code(res.verdict)


def cmd_parab_push(prob: ProblemFile, out) -> int:
    prob.require("datum", "matrix")
    if prob.matrix.variable.tag != "t":
        raise ParseError("parab push needs an equivariant matrix in t")
    conn = parabolic.EquivariantMatrixConnection(prob.datum, prob.matrix)
    out += _flag_lines(prob.datum)
    res = parabolic.check_matrix_equivariance(conn)
    if not res:
        out.append(f"equivariant and pole-free: {res.verdict}")
        out += _check_lines(res)
        return 1
    push = parabolic.pushforward_connection(conn)
    out.append("parabolic connection matrix (coefficient of dz/z):")
    out += _matrix_lines(push.D, "D")
    out.append(f"residue: {_matrix(parabolic.residue(push))}")
    check = parabolic.parabolic_condition_check(push)
    out.append(f"parabolic connection: {check.verdict}")
    out += _check_lines(check)
    return 0


def cmd_parab_pull(prob: ProblemFile, out) -> int:
    prob.require("datum", "matrix")
    if prob.matrix.variable.tag != "z":
        raise ParseError("parab pull needs a parabolic matrix in z")
    out += _flag_lines(prob.datum)
    try:
        eq = parabolic.pullback_connection(parabolic.ParabolicMatrixConnection(prob.datum, prob.matrix))
    except ParabolicConditionViolated as exc:
        out.append(f"rejected: {exc}")
        return 1
    out.append("equivariant connection matrix (coefficient of dt):")
    out += _matrix_lines(eq.omega, "omega")
    out.append(f"equivariant and pole-free: {parabolic.check_matrix_equivariance(eq).verdict}")
    return 0


def cmd_parab_residue(prob: ProblemFile, out) -> int:
    prob.require("datum", "matrix")
    out += _flag_lines(prob.datum)
    if prob.matrix.variable.tag == "t":
        conn = parabolic.EquivariantMatrixConnection(prob.datum, prob.matrix)
        res = parabolic.check_matrix_equivariance(conn)
        if not res:
            out.append(f"equivariant and pole-free: {res.verdict}")
            out += _check_lines(res)
            return 1
        series_res = parabolic.residue(parabolic.pushforward_connection(conn))
        closed = parabolic.closed_form_residue(conn)
        out.append(f"residue: {_matrix(series_res)}")
        out.append(f"closed form agrees: {str(series_res == closed).lower()}")
    else:
        out.append(f"residue: {_matrix(parabolic.residue(parabolic.ParabolicMatrixConnection(prob.datum, prob.matrix)))}")
    return 0


# degree


def _bundle_lines(b) -> list:
    lines = [f"bundle: rank {b.rank}, degree {b.degree}"]
    for label, _ in b.points:
        lines.append(f"  point {label}: weights {_vec(b.local_weights(label))}")
    return lines


def cmd_degree_pardeg(prob: ProblemFile, out) -> int:
    prob.require("bundle")
    b = prob.bundle
    out += _bundle_lines(b)
    out.append(f"par-deg: {_q(degree.par_deg(b))}")
    if b.rank == 1:
        out.append(f"admits a connection: {str(degree.line_connection_exists(b)).lower()}")
    return 0


def cmd_degree_criterion(prob: ProblemFile, out) -> int:
    prob.require("bundle")
    b = prob.bundle
    out += _bundle_lines(b)
    decomps = [d for d, _ in prob.decompositions]
    chars = {k: chis for k, (_, chis) in enumerate(prob.decompositions) if chis is not None}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", degree.HypothesisWarning)
        report = degree.weil_atiyah_check(b, decomps, chars)
    for note in report.warnings:
        out.append(f"warning: {note}")
    for line in report.lines:
        d = line.decomposition
        name = f"{d.name} " if d.name else ""
        status = "ok" if line.ok else "VIOLATION"
        out.append(f"{name}{d.describe()} chi={_vec(line.character)} degree={_q(line.degree)} {status}")
    out.append(f"violations: {len(report.violations)}")
    out.append(f"verdict: {str(report.verdict).lower()}")
    return _code(report.verdict)


COMMANDS = {
    ("parahoric", "check"): cmd_parahoric_check,
    ("equiv", "check"): cmd_equiv_check,
    ("equiv", "to-logahoric"): cmd_equiv_to_logahoric,
    ("equiv", "from-logahoric"): cmd_equiv_from_logahoric,
    ("equiv", "local-type"): cmd_equiv_local_type,
    ("parab", "push"): cmd_parab_push,
    ("parab", "pull"): cmd_parab_pull,
    ("parab", "check"): cmd_parab_check,
    ("parab", "residue"): cmd_parab_residue,
    ("degree", "pardeg"): cmd_degree_pardeg,
    ("degree", "criterion"): cmd_degree_criterion,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logahoric",
        description="Exact local computations for parabolic, equivariant and logahoric connections.",
    )
    groups = parser.add_subparsers(dest="group", required=True)
    for group in ("parahoric", "equiv", "parab", "degree"):
        gp = groups.add_parser(group)
        actions = gp.add_subparsers(dest="action", required=True)
        for g, action in COMMANDS:
            if g != group:
                continue
            ap = actions.add_parser(action)
            ap.add_argument("file", nargs="?", help="problem file (or use --input)")
            ap.add_argument("--input", "-i", dest="input", help="problem file")
            ap.add_argument("--truncation", type=int, default=None, help="default order for series without O(...)")
            ap.add_argument("--format", choices=["plain"], default="plain")
    return parser


def run_command(group: str, action: str, text: str, truncation: int | None = None):
    """Run a subcommand on problem text; returns ``(report, exit_code)``."""
    out: list = [f"command: {group} {action}"]
    try:
        prob = parse_problem(text, truncation=truncation)
        code = COMMANDS[group, action](prob, out)
    except LogahoricError as exc:
        return f"input error: {exc}\n", 2
    return "\n".join(out) + "\n", code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    path = args.input or args.file
    if path is None:
        parser.error("a problem file is required (positional or --input)")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    report, code = run_command(args.group, args.action, text, args.truncation)
    (sys.stderr if code == 2 else sys.stdout).write(report)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
