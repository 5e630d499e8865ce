"""
Ternary cubics and projections of the cubic Veronese surface
============================================================

A ternary cubic ``F`` is a point of P^9.  Its position relative to the
Veronese surface and its secant varieties decides how the projection of the
surface from ``[F]`` looks.  We classify the five orbit representatives,
then present each projection ring and count its minimal generators.
"""

from __future__ import annotations

from vlab.apolarity import build_aronhold, catalecticant, classify_stratum, orbit_representatives
from vlab.arith import DEFAULT_PRIME, GF, rank
from vlab.poly import Ring
from vlab.presentation import generator_profile, projection_ring

Y = Ring(["y0", "y1", "y2"], field=GF(DEFAULT_PRIME))
forms = dict(orbit_representatives(Y))
forms["y0y1y2"] = Y("y0*y1*y2")
forms["y2^3"] = Y("y2^3")

# %%
# The stratum is read off the 3 x 6 catalecticant; in rank 3 the three apolar
# quadrics decide between the secant variety and its complement.

for name, F in forms.items():
    v = classify_stratum(F)
    print(f"{name:8s} {str(F):32s} rank {rank(catalecticant(F, 1), Y.field)}  {v.stratum.value}")

# %%
# The Aronhold quartic is interpolated from random points of the Fermat
# orbit.  It vanishes exactly on the secant variety.

S = build_aronhold()
for name, F in forms.items():
    print(f"S({name}) = {S.evaluate(F)}")

# %%
# The projection from ``[F]`` has coordinate ring generated by the nine cubics
# apolar to ``F``.  Its defining ideal is computed by elimination.

for name, F in forms.items():
    pr = projection_ring(F, present=True)
    prof = dict(sorted(generator_profile(pr.presentation).items()))
    hf = pr.presentation.hilbert_series().series(5)
    print(f"{name:8s} generators by degree {prof}  Hilbert function {hf}")
