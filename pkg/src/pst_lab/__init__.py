"""Quantum-walk periodicity and perfect state transfer on gcd-graphs.

Exact integral spectra of Cayley graphs over finite abelian groups,
transition matrices exp(itA) at quarter periods in Gaussian rationals,
and builders for the periodic / PST graph families.
"""

from pst_lab.abelian import GroupSpec, crt_join, crt_split, gcd_tuple, subgroup_generated
from pst_lab.cayley import CayleyGraph, GcdSetSpec, build_cayley, build_gcd_set, gcd_graph, icg
from pst_lab.config import Limits, Tolerances
from pst_lab.spectra import NonIntegralSpectrum, Spectrum, eigenvalue, full_spectrum
from pst_lab.evolution import Entry, FloatTransition, QuarterTransition, float_transition, quarter_transition

__all__ = [
    "GroupSpec",
    "gcd_tuple",
    "subgroup_generated",
    "crt_split",
    "crt_join",
    "CayleyGraph",
    "GcdSetSpec",
    "build_cayley",
    "build_gcd_set",
    "gcd_graph",
    "icg",
    "Limits",
    "Tolerances",
    "NonIntegralSpectrum",
    "Spectrum",
    "eigenvalue",
    "full_spectrum",
    "Entry",
    "FloatTransition",
    "QuarterTransition",
    "float_transition",
    "quarter_transition",
]
