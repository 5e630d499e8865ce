"""
Probing Koszulness
==================

An algebra is Koszul when the residue field has a linear resolution.  We
resolve the residue field in a finite window and report the first entry off
the linear strand, if any.
"""

from __future__ import annotations

from vlab.apolarity import orbit_representatives
from vlab.arith import DEFAULT_PRIME, GF
from vlab.diagonal import remark_H
from vlab.poly import Ring
from vlab.presentation import pinched_veronese_generators, projection_ring, subalgebra_presentation
from vlab.resolution import GradedAlgebra, betti_over_polynomial_ring, betti_table, koszul_probe, residue_field

Fp = GF(DEFAULT_PRIME)

# %%
# The pinched Veronese: the nine cubic monomials other than x0*x1*x2.

X = Ring(["x0", "x1", "x2"], field=Fp)
pinched = GradedAlgebra.quotient(subalgebra_presentation(pinched_veronese_generators(X)).ideal)
print(betti_table(pinched, residue_field(pinched), 3, 4).to_text())
print("pinched Veronese:", koszul_probe(pinched, 3, 5))

# %%
# The projection from the Fermat cubic needs a cubic relation, so it cannot
# be Koszul.  Over the polynomial ring the cubic shows up as beta_{1,3}.

Y = Ring(["y0", "y1", "y2"], field=Fp)
P5 = projection_ring(orbit_representatives(Y)["F5"], present=True).presentation
print(betti_over_polynomial_ring(P5.ideal, 1, 3).to_text())
print("A_F5:", koszul_probe(GradedAlgebra.quotient(P5.ideal), 3, 5))

# %%
# A quadratic algebra that is still not Koszul.

H = remark_H(Fp).diagonal().algebra()
print("(S/H)_Delta:", koszul_probe(H, 4, 8))
