"""Exact polynomial algebra: Groebner bases, syzygies, resolutions."""

from .groebner import (GBResult, ModuleOrder, buchberger, contains, gb_of_matrix,
                       groebner_engine, minimal_generators, normal_form, reduced_basis,
                       s_vector, same_submodule, syzygies)
from .matrix import DegreeError, GradedMatrix
from .modules import (CODIM_INFINITE, BettiTable, HilbertSeries, PresentedModule, Resolution,
                      codimension, codimension_via_fitting, fitting_ideal, hilbert_series,
                      hilbert_series_from_betti, hilbert_series_from_initial, homology,
                      krull_dimension, minimal_free_resolution, monomial_hilbert_numerator, prune)
from .polynomial import GREVLEX, LEX, MonomialOrder, Polynomial, polynomial_ring

__all__ = [
    "BettiTable", "CODIM_INFINITE", "DegreeError", "GBResult", "GREVLEX", "GradedMatrix",
    "HilbertSeries", "LEX", "ModuleOrder", "MonomialOrder", "Polynomial", "PresentedModule",
    "Resolution", "buchberger", "codimension", "codimension_via_fitting", "contains",
    "fitting_ideal", "gb_of_matrix", "groebner_engine", "hilbert_series",
    "hilbert_series_from_betti", "hilbert_series_from_initial", "homology", "krull_dimension",
    "minimal_free_resolution", "minimal_generators", "monomial_hilbert_numerator",
    "normal_form", "polynomial_ring", "prune", "reduced_basis", "s_vector", "same_submodule",
    "syzygies",
]
