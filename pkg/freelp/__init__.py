#
#  Lincense: Academic Free License (AFL) v3.0
#
"""

Khintchine-type inequalities for free group polynomials
=======================================================

Exact and certified numerics for the two sides of the non-commutative
Khintchine inequalities of homogeneous polynomials in free group generators:
Schatten norms of matricizations (the K_p(n,d) side) and L_p norms of
Σ a_I ⊗ λ(w_I) over the free group von Neumann algebra (the W_p(n,d) side).

"""
from .__version__ import __VERSION__
