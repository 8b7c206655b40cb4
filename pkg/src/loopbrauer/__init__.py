"""Exact computations in the loop-Brauer algebra A_n(x) and its loopless subalgebra L_n(x)."""

from .algebra import AlgebraElement, check_relations, mult_table
from .cellmod import CellModule, cell_module, radical
from .diagrams import Diagram, compose, enumerate_diagrams
from .scalars import BiLaurent, EvalAtZero, LaurentPoly

__all__ = [
    "AlgebraElement", "BiLaurent", "CellModule", "Diagram", "EvalAtZero", "LaurentPoly",
    "cell_module", "check_relations", "compose", "enumerate_diagrams", "mult_table", "radical",
]
__version__ = "0.1.0"
