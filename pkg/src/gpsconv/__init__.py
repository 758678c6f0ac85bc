"""Exact mechanization of convergence certificates for generalized power-series
solutions of algebraic ODEs in the delta = x d/dx form."""

from .exponents import GaussQ
from .gps import GeneralizedSeries
from .diffpoly import DiffPolynomial, DiffMonomial, check_hypotheses
from .problem import Problem, load_problem, parse_problem
from .pipeline import certificate, run, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "GaussQ", "GeneralizedSeries", "DiffPolynomial", "DiffMonomial", "check_hypotheses",
    "Problem", "load_problem", "parse_problem", "run", "certificate", "verify_certificate",
]
