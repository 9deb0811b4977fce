"""Exact symbolic engine for quadratic identities on quantum minors."""

from .extend import PressedAssignment, QIFunctionTable, extend_f0, reconstruct
from .grid import ExtendedGrid, path_matrix, pressed_map
from .identities import evaluate_qi, is_homogeneous, make_coplucker, make_dodgson, make_plucker, parse_qi
from .ncalg import AlgebraElement, QMatrixPresentation, TorusPresentation, pbw_reduce, torus_left_divide
from .qminor import Cortege, QMatrix, generic_qmatrix, interval_qc, quantum_minor
from .scalar import LaurentScalar, q

__all__ = [
    "AlgebraElement",
    "Cortege",
    "ExtendedGrid",
    "LaurentScalar",
    "PressedAssignment",
    "QIFunctionTable",
    "QMatrix",
    "QMatrixPresentation",
    "TorusPresentation",
    "evaluate_qi",
    "extend_f0",
    "generic_qmatrix",
    "interval_qc",
    "is_homogeneous",
    "make_coplucker",
    "make_dodgson",
    "make_plucker",
    "parse_qi",
    "path_matrix",
    "pbw_reduce",
    "pressed_map",
    "q",
    "quantum_minor",
    "reconstruct",
    "torus_left_divide",
]
