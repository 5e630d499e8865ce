"""Coordinate rings of projections of the cubic Veronese surface.

For a ternary cubic ``F`` the projection from ``[F]`` has coordinate ring
``A_F = K[U_F]`` where ``U_F`` is the 9-dimensional space of dual cubics
annihilating ``F``.  ``A_F`` is presented as ``K[z_1..z_s] / I`` by
eliminating ``x`` from ``(z_i - g_i)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .apolarity import ZeroForm, annihilator_slice
from .arith import rank
from .groebner import (
    Budget,
    HilbertSeries,
    Ideal,
    eliminate,
    hilbert_series,
    min_generators,
)
from .poly import Polynomial, Ring, exponents_of_degree, format_polynomial

QUADRATIC_CAP = 4


def pinched_veronese_generators(ring: Ring | None = None) -> list[Polynomial]:
    """The nine cubic monomials other than ``x0*x1*x2``, degrevlex descending."""
    ring = ring or Ring(["x0", "x1", "x2"])
    return [ring.monomial(m) for m in exponents_of_degree(3, 3) if m != (1, 1, 1)]


@dataclass
class SubalgebraPresentation:
    """``K[g_1..g_s] = K[z_1..z_s] / ideal`` with ``deg z_i = 1``."""

    generators: list[Polynomial]
    ring: Ring
    ideal: Ideal
    degree_cap: int | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def source_ring(self) -> Ring:
        return self.generators[0].ring

    def substitution_check(self) -> bool:
        """Every defining relation vanishes under ``z_i -> g_i``."""
        return all(g.subs(self.generators, self.source_ring).is_zero() for g in self.ideal.gens)

    def hilbert_series(self) -> HilbertSeries:
        if self.degree_cap is not None:
            raise ValueError("Hilbert series needs an untruncated presentation")
        return hilbert_series(self.ideal)

    def to_text(self) -> str:
        lines = [
            "ring " + " ".join(self.ring.names),
            "field " + self.ring.field.spec,
            "generators",
        ]
        for z, g in zip(self.ring.names, self.generators):
            lines.append(f"  {z} = {format_polynomial(g)}")
        lines.append("relations")
        for r in self.ideal.gens:
            lines.append("  " + format_polynomial(r))
        return "\n".join(lines) + "\n"


def subalgebra_presentation(
    gens: Sequence[Polynomial],
    degree_cap: int | None = None,
    budget: Budget | None = None,
    names: Sequence[str] | None = None,
) -> SubalgebraPresentation:
    """Present the subalgebra generated by forms of one common degree.

    With ``degree_cap`` the elimination runs degree-truncated: relations are
    complete up to that degree in the ``z`` variables.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    src = gens[0].ring
    c = gens[0].total_degree()
    if any(g.multidegree() is None or g.total_degree() != c for g in gens):
        raise ValueError("generators must be homogeneous of one degree")
    s = len(gens)
    zs = list(names) if names else [f"z{i}" for i in range(1, s + 1)]
    big = Ring(list(src.names) + zs, [(1,)] * src.nvars + [(c,)] * s, src.field)
    polys = []
    for i, g in enumerate(gens):
        polys.append(big.gen(src.nvars + i) - g.to_ring(big))
    weights = [1] * src.nvars + [c] * s
    wcap = None if degree_cap is None else degree_cap * c
    E = eliminate(Ideal(big, polys), list(range(src.nvars)), budget=budget,
                  degree_cap=wcap, weights=weights)
    pres = Ring(zs, [(1,)] * s, src.field)
    ideal = Ideal(pres, [g.to_ring(pres) for g in E.gens])
    gb = E.elimination_basis
    meta = {"gb_size": len(gb), "pairs": gb.stats.pairs_processed, "truncated": gb.truncated_at is not None}
    return SubalgebraPresentation(gens, pres, ideal, degree_cap, meta)


def generator_profile(P: SubalgebraPresentation, cap: int = QUADRATIC_CAP) -> Counter:
    """Degrees of a minimal generating set of the defining ideal up to ``cap``."""
    if cap < 3:
        raise ValueError("cap must be at least 3")
    if P.degree_cap is not None and P.degree_cap < cap:
        raise ValueError("presentation truncated below the requested cap")
    return min_generators(P.ideal, cap)


def is_quadratic(P: SubalgebraPresentation, cap: int = QUADRATIC_CAP) -> bool:
    return quadraticity_report(P, cap)["quadratic"]


def quadraticity_report(P: SubalgebraPresentation, cap: int = QUADRATIC_CAP) -> dict:
    profile = generator_profile(P, cap)
    return {
        "quadratic": set(profile) <= {2},
        "profile": {str(k): v for k, v in sorted(profile.items())},
        "cap": cap,
        "note": f"relations checked in degrees <= {cap}; see the Hilbert-function check for higher degrees",
    }


def products_span_dimension(gens: Sequence[Polynomial], d: int) -> int:
    """``dim`` of the span of all d-fold products of ``gens`` (brute force)."""
    if d == 0:
        return 1
    ring = gens[0].ring
    F = ring.field
    deg = gens[0].total_degree() * d
    mons = ring.monomials_of_degree(deg)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for combo in combinations_with_replacement(range(len(gens)), d):
        f = ring.one()
        for i in combo:
            f = f * gens[i]
        row = [0] * len(mons)
        for m, c in f.coeffs.items():
            row[index[m]] = c
        rows.append(row)
    return rank(rows, F)


def relations_by_linear_algebra(gens: Sequence[Polynomial], d: int, pres: Ring | None = None) -> list[Polynomial]:
    """Kernel of ``K[z]_d -> K[x]_{cd}``, ``z_i -> g_i`` (independent of Groebner bases)."""
    from .arith import nullspace

    ring = gens[0].ring
    F = ring.field
    s = len(gens)
    pres = pres or Ring([f"z{i}" for i in range(1, s + 1)], field=F)
    zmons = exponents_of_degree(s, d)
    xdeg = gens[0].total_degree() * d
    mons = ring.monomials_of_degree(xdeg)
    index = {m: i for i, m in enumerate(mons)}
    cols = []
    for e in zmons:
        f = ring.one()
        for i, k in enumerate(e):
            if k:
                f = f * gens[i] ** k
        col = [0] * len(mons)
        for m, c in f.coeffs.items():
            col[index[m]] = c
        cols.append(col)
    # columns are images of z-monomials; kernel of the matrix whose columns are cols
    M = [list(r) for r in zip(*cols)]
    N = nullspace(M, F)
    return [pres.from_dict({e: v for e, v in zip(zmons, vec) if v != 0}) for vec in N]


def hilbert_consistency(P: SubalgebraPresentation, upto: int = 4) -> dict:
    """Compare the presentation's Hilbert function with brute-force product spans."""
    hs = P.hilbert_series()
    out = {}
    for d in range(upto + 1):
        out[d] = (hs.dimension(d), products_span_dimension(P.generators, d))
    return out


@dataclass
class ProjectionRing:
    """``A_F``: the form, a basis of ``U_F`` and the presentation of ``K[U_F]``."""

    form: Polynomial
    basis: list[Polynomial]
    presentation: SubalgebraPresentation | None = None

    def present(self, degree_cap: int | None = None, budget: Budget | None = None) -> SubalgebraPresentation:
        if self.presentation is None or (self.presentation.degree_cap or 10**9) < (degree_cap or 10**9):
            self.presentation = subalgebra_presentation(self.basis, degree_cap, budget)
        return self.presentation


def projection_ring(F: Polynomial, dual: Ring | None = None, present: bool = False,
                    degree_cap: int | None = None) -> ProjectionRing:
    """``U_F`` as the reduced nullspace of the cubic apolar pairing.

    For a monomial ``F`` the echelon basis consists of monomials.
    """
    if F.is_zero():
        raise ZeroForm("F = 0")
    basis = annihilator_slice(F, F.total_degree(), dual)
    pr = ProjectionRing(F, basis)
    if present:
        pr.present(degree_cap)
    return pr
