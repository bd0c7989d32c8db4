"""Exact computations on the cells of Kronecker quiver Grassmannians."""

from .cluster import LaurentPoly, X_of_M, chi_table, cluster_check, cluster_variable
from .combinatorics import (
    IndexTuple,
    JkPair,
    a_set,
    b_interval_set,
    dim_vector,
    enumerate_tuples,
    jk_set,
    reduce,
)
from .config import Settings
from .engine import (
    CellPoint,
    VerificationReport,
    cell_census,
    cell_dimension_profile,
    check_subrepresentation,
    injectivity_spot_check,
    normal_form,
    reduce_modulo_relations,
    replay_decomposition,
    solve_cell_point,
    verify_batch,
    verify_det_identity,
    verify_ideal_equality,
    verify_tuple,
)
from .exceptions import KroneckerError
from .fields import FQ, QQ
from .linalg import det_symbolic, minors, rank
from .matrices import LabeledMatrix, build_N1, build_N2, extract_A, general_submatrix
from .poly import Polynomial, Variable, parse, render, x, y
from .relations import check_structure, generator_set, leading_terms, relation_D, relation_Dhat, solving_order
from .trees import build_tree, frame

__all__ = [
    "CellPoint",
    "FQ",
    "IndexTuple",
    "JkPair",
    "KroneckerError",
    "LabeledMatrix",
    "LaurentPoly",
    "Polynomial",
    "QQ",
    "Settings",
    "Variable",
    "VerificationReport",
    "X_of_M",
    "a_set",
    "b_interval_set",
    "build_N1",
    "build_N2",
    "build_tree",
    "cell_census",
    "cell_dimension_profile",
    "check_structure",
    "check_subrepresentation",
    "chi_table",
    "cluster_check",
    "cluster_variable",
    "det_symbolic",
    "dim_vector",
    "enumerate_tuples",
    "extract_A",
    "frame",
    "general_submatrix",
    "generator_set",
    "injectivity_spot_check",
    "jk_set",
    "leading_terms",
    "minors",
    "normal_form",
    "parse",
    "rank",
    "reduce",
    "reduce_modulo_relations",
    "relation_D",
    "relation_Dhat",
    "render",
    "replay_decomposition",
    "solve_cell_point",
    "solving_order",
    "verify_batch",
    "verify_det_identity",
    "verify_ideal_equality",
    "verify_tuple",
    "x",
    "y",
]
