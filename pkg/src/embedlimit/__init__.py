"""Exact limit laws for embedding distributions of linear graph families."""

from .distributions import EmbeddingDistribution, MomentSummary, clt_series, ks_distance, moments
from .enumerator import MultiGraph, euler_and_crosscap_polynomials, genus_polynomial
from .kinds import Kind
from .poly import BiPoly, IntPolynomial
from .polymatrix import ProductionMatrix, char_poly
from .recurrence import FamilySpec, RecurrenceSpec, total_polynomial
from .spectral import LimitCase, LimitReport, analyze_matrix, analyze_recurrence

__version__ = "0.1.0"
