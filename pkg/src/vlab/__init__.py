"""Exact computations around projections of the cubic Veronese surface.

Modules, bottom up: ``arith`` (fields, linear algebra), ``poly``
(polynomials), ``groebner`` (Buchberger and ideal operations), ``apolarity``
(catalecticants and the secant stratification), ``presentation`` (the rings
``A_F``), ``diagonal`` (Rees algebras and diagonals), ``resolution`` (truncated
Betti tables and Koszul probes) and ``cli``.
"""

__version__ = "0.1.0"

from .arith import CHECK_PRIME, DEFAULT_PRIME, GF, QQ
from .poly import Polynomial, Ring
from .groebner import Ideal
