"""Betti strata of graded Artinian quotients of k[x, y], computed exactly."""

__version__ = "0.1.0"

from .algebra_core import QQ, BiForm, FieldSpec, GradedSubspace, tau_of
from .hilbert_betti import BettiTriple, OSequence, analyze_H, build_lattice, complete_triple
from .graded_ideal import (
    GradedIdeal,
    chart_ideal,
    invariants_of,
    monomial_ideal_of,
    random_ideal,
    standard_generators,
    theta_matrix,
)
from .strata_lab import stratum_census, verify_codim_report

__all__ = [
    "QQ", "BiForm", "FieldSpec", "GradedSubspace", "tau_of",
    "BettiTriple", "OSequence", "analyze_H", "build_lattice", "complete_triple",
    "GradedIdeal", "chart_ideal", "invariants_of", "monomial_ideal_of",
    "random_ideal", "standard_generators", "theta_matrix",
    "stratum_census", "verify_codim_report",
]
