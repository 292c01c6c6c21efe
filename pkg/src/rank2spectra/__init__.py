"""Characters, fusion graphs, modular data and spectral measures for Sp(2) and SO(5)."""

from .graphs import LabeledGraph, a_graph
from .measures import AtomicMeasure2, DensityMeasure2, measure_cross_moment, measure_for
from .modular import SMatrix, eigendata, psi_star, smatrix, verlinde_N
from .torus import LaurentPoly2, TorusPoint, Weight, char_fund, char_general
from .verify import VerificationReport, run_suite
from .weights import Weight1D, weight_for

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure2", "DensityMeasure2", "LabeledGraph", "LaurentPoly2", "SMatrix", "TorusPoint",
    "VerificationReport", "Weight", "Weight1D", "a_graph", "char_fund", "char_general", "eigendata",
    "measure_cross_moment", "measure_for", "psi_star", "run_suite", "smatrix", "verlinde_N",
    "weight_for",
]
