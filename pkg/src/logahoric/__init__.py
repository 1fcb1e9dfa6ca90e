"""Exact local correspondences between equivariant, parabolic and logahoric connections."""

from .checks import CheckResult, Verdict, Violation
from .degree import (
    LeviDecomposition,
    ParabolicBundleGlobal,
    character_line_degree,
    deg_root_stack,
    line_connection_exists,
    par_deg,
    weil_atiyah_check,
)
from .equivariant import (
    EquivariantConnectionG,
    LocalType,
    check_invariance,
    gauge_by_t_theta,
    local_type,
    logahoric_to_equivariant,
)
from .errors import (
    InvalidDatum,
    InvalidDecomposition,
    LogahoricError,
    NonIntegralExponent,
    NotParahoric,
    ParabolicConditionViolated,
    ParseError,
    ResidueConditionViolated,
    RootNotInSystem,
    StructureMismatch,
    TruncationExhausted,
    VariableMismatch,
)
from .parabolic import (
    EquivariantMatrixConnection,
    ParabolicLocalDatum,
    ParabolicMatrixConnection,
    check_matrix_equivariance,
    closed_form_residue,
    flag_from_weights,
    parabolic_condition_check,
    pullback_connection,
    pushforward_connection,
    residue,
)
from .parahoric import (
    LogahoricConnection,
    ParahoricAlgebra,
    parahoric_membership,
    residue_condition_check,
    weight_piece_membership,
    weight_zero_projection,
)
from .problem import ProblemFile, emit_problem, parse_problem
from .rootsys import Coweight, LieAlgebraElement, RootSystem, bracket, m_alpha, pairing, theta_eigenspace
from .series import (
    LaurentMatrix,
    LaurentSeries,
    Variable,
    mu_r_weight,
    parse_series,
    series_add,
    series_derivative,
    series_inverse,
    series_mul,
    substitute_t_to_z,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "Coweight",
    "EquivariantConnectionG",
    "EquivariantMatrixConnection",
    "InvalidDatum",
    "InvalidDecomposition",
    "LaurentMatrix",
    "LaurentSeries",
    "LeviDecomposition",
    "LieAlgebraElement",
    "LocalType",
    "LogahoricConnection",
    "LogahoricError",
    "NonIntegralExponent",
    "NotParahoric",
    "ParabolicBundleGlobal",
    "ParabolicConditionViolated",
    "ParabolicLocalDatum",
    "ParabolicMatrixConnection",
    "ParahoricAlgebra",
    "ParseError",
    "ProblemFile",
    "ResidueConditionViolated",
    "RootNotInSystem",
    "RootSystem",
    "StructureMismatch",
    "TruncationExhausted",
    "Variable",
    "VariableMismatch",
    "Verdict",
    "Violation",
    "bracket",
    "character_line_degree",
    "check_invariance",
    "check_matrix_equivariance",
    "closed_form_residue",
    "deg_root_stack",
    "emit_problem",
    "flag_from_weights",
    "gauge_by_t_theta",
    "line_connection_exists",
    "local_type",
    "logahoric_to_equivariant",
    "m_alpha",
    "mu_r_weight",
    "pairing",
    "par_deg",
    "parabolic_condition_check",
    "parahoric_membership",
    "parse_problem",
    "parse_series",
    "pullback_connection",
    "pushforward_connection",
    "residue",
    "residue_condition_check",
    "series_add",
    "series_derivative",
    "series_inverse",
    "series_mul",
    "substitute_t_to_z",
    "theta_eigenspace",
    "weight_piece_membership",
    "weight_zero_projection",
    "weil_atiyah_check",
]
