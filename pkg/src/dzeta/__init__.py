"""Exact evaluation of an archimedean doubling zeta integral.

The library builds weight data, determinant-product polynomials, Gaussian
matrix coefficients and oscillator-representation words over the exact
coefficient ring Q(i)[sqrt2^(+-1), sqrt pi^(+-1)], verifies the identities
relating them on small grids, and evaluates the resulting closed forms.
"""

from .scalar import ExactScalar, QI, gamma_exact
from .constructions import WeightData
from .constants import euler_factor, zeta_closed_form

__version__ = "0.1.0"

__all__ = ["ExactScalar", "QI", "WeightData", "euler_factor", "gamma_exact",
           "zeta_closed_form", "__version__"]
