"""Bigraded rings, Rees algebras of three quadrics and their diagonals.

For a complete intersection ``I = (g1, g2, g3)`` of quadrics in
``R = K[x_1..x_n]`` the Rees algebra is ``S / J`` with
``S = K[x, t_1, t_2, t_3]`` bigraded by ``deg x = (1,0)``, ``deg t = (0,1)``
and ``J`` the 2-minors of ``X = [[g1, g2, g3], [t1, t2, t3]]``.  The signed
minors ``f_i`` make both rows of ``X`` syzygies of ``(f_1, f_2, f_3)``.

Homology and slice dimensions are computed by linear algebra on bigraded
slices whose monomial bases come from normal forms modulo a degrevlex Groebner
basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .arith import DEFAULT_PRIME, GF, PrimeField, nullspace, rank, rref
from .groebner import (
    Budget,
    GroebnerBasis,
    Ideal,
    colon,
    hilbert_series,
    is_complete_intersection,
    krull_dimension,
)
from .poly import Polynomial, Ring, exponents_of_degree
from .presentation import SubalgebraPresentation, subalgebra_presentation
from .resolution import GradedAlgebra, QuotientModule, WindowExceeded

DEFAULT_WINDOW = (10, 6)


class NotCompleteIntersection(ValueError):
    pass


# ---------------------------------------------------------------------------
# bigraded quotients and their diagonals


def bigraded_polynomial_ring(xs: Sequence[str], ts: Sequence[str], field=None) -> Ring:
    from .arith import QQ

    return Ring(list(xs) + list(ts), [(1, 0)] * len(xs) + [(0, 1)] * len(ts), field or QQ)


@dataclass
class BigradedQuotient:
    """``S / ideal`` for a bigraded polynomial ring ``S``."""

    ring: Ring
    ideal: Ideal

    def __post_init__(self):
        if self.ring.grading_rank != 2:
            raise ValueError("ring must be bigraded")
        if not all(g.multidegree() is not None for g in self.ideal.gens):
            raise ValueError("defining ideal must be bihomogeneous")
        self._gb: GroebnerBasis | None = None
        self._hs = None

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = self.ideal.groebner()
        return self._gb

    def basis(self, p: int, q: int) -> list[tuple]:
        """Standard monomials of bidegree ``(p, q)``."""
        if p < 0 or q < 0:
            return []
        gb = self.gb
        return [m for m in self.ring.monomials_of_degree((p, q)) if gb.is_standard(m)]

    def dimension(self, p: int, q: int) -> int:
        if p < 0 or q < 0:
            return 0
        if self._hs is None:
            self._hs = hilbert_series(self.ideal)
        return self._hs.dimension((p, q))

    def diagonal(self, c: int = 1, e: int = 1, window: int = 8) -> "DiagonalSlice":
        return DiagonalSlice(self, (c, e), window)


@dataclass
class DiagonalSlice:
    """The pieces of a bigraded quotient along the line ``(i c, i e)``."""

    host: BigradedQuotient
    direction: tuple[int, int] = (1, 1)
    window: int = 8

    def __post_init__(self):
        c, e = self.direction
        if c < 0 or e < 0 or (c, e) == (0, 0):
            raise ValueError("direction must be nonnegative and nonzero")
        g = gcd(c, e)
        self.direction = (c // g, e // g)

    def dimension(self, i: int) -> int:
        c, e = self.direction
        return self.host.dimension(i * c, i * e)

    def hilbert_function(self, upto: int | None = None) -> list[int]:
        upto = self.window if upto is None else upto
        return [self.dimension(i) for i in range(upto + 1)]

    def algebra(self, compatible: Sequence[Ideal] = (), fine: bool = True) -> GradedAlgebra:
        """The diagonal as a standard graded algebra for the resolution engine."""
        return GradedAlgebra.diagonal(self.host.ideal, self.direction, compatible, fine=fine)


# ---------------------------------------------------------------------------
# Rees algebras of three quadrics


@dataclass
class ReesPresentation:
    quadrics: list[Polynomial]
    ring: Ring
    X: list[list[Polynomial]]
    f: list[Polynomial]

    @property
    def source_ring(self) -> Ring:
        return self.quadrics[0].ring

    @property
    def g(self) -> list[Polynomial]:
        return self.X[0]

    @property
    def t(self) -> list[Polynomial]:
        return self.X[1]

    @property
    def B_ideal(self) -> Ideal:
        return Ideal(self.ring, self.f[:2])

    @property
    def J(self) -> Ideal:
        return Ideal(self.ring, self.f)

    def B(self) -> BigradedQuotient:
        return BigradedQuotient(self.ring, self.B_ideal)

    def rees(self) -> BigradedQuotient:
        return BigradedQuotient(self.ring, self.J)

    def syzygy_residuals(self) -> tuple[Polynomial, Polynomial]:
        """``sum g_i f_i`` and ``sum t_i f_i``; both are identically zero."""
        zero = self.ring.zero()
        r1, r2 = zero, zero
        for gi, ti, fi in zip(self.g, self.t, self.f):
            r1 = r1 + gi * fi
            r2 = r2 + ti * fi
        return r1, r2

    def with_field(self, field) -> "ReesPresentation":
        src = self.source_ring.with_field(field)
        return rees_presentation(*[q.to_ring(src) for q in self.quadrics], check=False)

    def to_text(self) -> str:
        lines = ["ring " + " ".join(self.ring.names), "X"]
        for row in self.X:
            lines.append("  " + ", ".join(str(p) for p in row))
        for i, fi in enumerate(self.f, 1):
            lines.append(f"f{i} = {fi}")
        return "\n".join(lines) + "\n"


def rees_presentation(g1: Polynomial, g2: Polynomial, g3: Polynomial,
                      t_names: Sequence[str] = ("t1", "t2", "t3"), check: bool = True) -> ReesPresentation:
    """Signed 2-minors presenting the Rees algebra of ``(g1, g2, g3)``."""
    gs = [g1, g2, g3]
    R = g1.ring
    if any(g.ring != R for g in gs):
        raise ValueError("quadrics must live in one ring")
    if any(g.is_zero() or g.multidegree() is None or g.total_degree() != 2 for g in gs):
        raise ValueError("expected three nonzero quadratic forms")
    if check and krull_dimension(Ideal(R, gs)) != R.nvars - 3:
        raise NotCompleteIntersection("the quadrics do not form a complete intersection")
    S = bigraded_polynomial_ring(R.names, t_names, R.field)
    g = [q.to_ring(S) for q in gs]
    t = [S.gen(R.nvars + i) for i in range(3)]

    def minor(a, b):
        return g[a] * t[b] - g[b] * t[a]

    f = [minor(1, 2), -minor(0, 2), minor(0, 1)]
    return ReesPresentation(list(gs), S, [g, t], f)


def lemma_checks(P: ReesPresentation, budget: Budget | None = None) -> dict[str, bool]:
    """The four colon / regular sequence identities of the Rees presentation."""
    S = P.ring
    f1, f2, f3 = P.f
    g3, t3 = P.g[2], P.t[2]
    B = P.B_ideal
    out = {}
    out["f1,f2 regular sequence"] = is_complete_intersection(B)
    out["(f1,f2):f3 = (g3,t3)"] = colon(B, f3, budget).equals(Ideal(S, [g3, t3]))
    out["(f1,f2):t3 = J"] = colon(B, t3, budget).equals(P.J)
    out["(t3,f1,f2):g3 = (t1,t2,t3)"] = colon(Ideal(S, [t3, f1, f2]), g3, budget).equals(Ideal(S, P.t))
    return out


def random_quadrics(ring: Ring, rng, count: int = 3, bound: int = 5) -> list[Polynomial]:
    """Dense quadrics with small integer coefficients."""
    mons = exponents_of_degree(ring.nvars, 2)
    out = []
    for _ in range(count):
        out.append(ring.from_dict({m: int(rng.integers(-bound, bound + 1)) for m in mons}))
    return out


def random_complete_intersection(ring: Ring, rng, tries: int = 20) -> list[Polynomial]:
    for _ in range(tries):
        gs = random_quadrics(ring, rng)
        if krull_dimension(Ideal(ring, gs)) == ring.nvars - 3:
            return gs
    raise NotCompleteIntersection("no complete intersection found")


# ---------------------------------------------------------------------------
# diagonal generators and modules


def diagonal_generators(quadrics: Sequence[Polynomial], c: int = 1, e: int = 1) -> list[Polynomial]:
    """Echelon basis of ``(I^e)_{e d + c}``, the generators of ``A_{c,e}``.

    For ``(c, e) = (1, 1)`` this spans the products ``x_i g_j``; for monomial
    ideals the basis consists of monomials.
    """
    gens = list(quadrics)
    R = gens[0].ring
    d = gens[0].total_degree()
    products = [R.one()]
    for _ in range(e):
        products = [p * g for p in products for g in gens]
    mons = [R.monomial(m) for m in exponents_of_degree(R.nvars, c)]
    spanning = [m * p for m in mons for p in products]
    deg = e * d + c
    cols = R.monomials_of_degree(deg)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for f in spanning:
        row = [0] * len(cols)
        for m, v in f.coeffs.items():
            row[index[m]] = v
        rows.append(row)
    Rr, _ = rref(rows, R.field)
    return [R.from_dict({cols[j]: v for j, v in enumerate(row) if v != 0}) for row in Rr]


def diagonal_module_presentation(host: BigradedQuotient, shift: tuple[int, int], D: int,
                                 algebra: GradedAlgebra | None = None) -> QuotientModule:
    """``R(-a,-b)_Delta`` as a module over ``R_Delta``, degree ``d`` piece ``R_{(d-a, d-b)}``.

    The module lives in degrees ``>= max(a, b)``; a window that cannot hold
    the lowest piece raises :class:`WindowExceeded`.
    """
    a, b = shift
    low = max(a, b)
    if low > D:
        raise WindowExceeded(f"module starts in degree {low} > D = {D}")
    A = algebra or host.diagonal().algebra()
    return QuotientModule(A, host.gb, lambda d: (d - a, d - b), low, f"R({-a},{-b})_D")


def rees_module(P: ReesPresentation, field=None) -> tuple[GradedAlgebra, QuotientModule]:
    """``B_Delta`` and the module ``Rees(I)_Delta = (S/J)_Delta`` over it."""
    if field is not None and field != P.ring.field:
        P = P.with_field(field)
    B = GradedAlgebra.diagonal(P.B_ideal, (1, 1), compatible=[P.J], label="B_Delta")
    M = QuotientModule(B, P.J.groebner(), lambda d: (d, d), 0, "Rees(I)_Delta")
    return B, M


# ---------------------------------------------------------------------------
# the two-periodic complex


@dataclass
class BigradedComplex:
    """``F_i = B(-s_i)`` with differentials given by single bihomogeneous forms."""

    base: BigradedQuotient
    shifts: list[tuple[int, int]]
    maps: list[Polynomial]  # maps[i - 1] : F_i -> F_{i-1}
    labels: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.maps)

    def composition_residuals(self) -> list[Polynomial]:
        """Normal forms of consecutive products; all zero for a complex."""
        gb = self.base.gb
        return [gb.normal_form(self.maps[i] * self.maps[i + 1]) for i in range(len(self.maps) - 1)]

    def is_complex(self) -> bool:
        return all(r.is_zero() for r in self.composition_residuals())

    def degrees_consistent(self) -> bool:
        for i, phi in enumerate(self.maps, 1):
            want = tuple(a - b for a, b in zip(self.shifts[i], self.shifts[i - 1]))
            if phi.multidegree() != want:
                return False
        return True

    def to_text(self) -> str:
        lines = ["shifts"]
        for i, s in enumerate(self.shifts):
            lines.append(f"  F{i} = B({-s[0]},{-s[1]})")
        lines.append("differentials")
        for i, (phi, lab) in enumerate(zip(self.maps, self.labels or [""] * len(self.maps)), 1):
            lines.append(f"  d{i} = [ {phi} ]" + (f"  # {lab}" if lab else ""))
        return "\n".join(lines) + "\n"


def complex_F_shift(i: int) -> tuple[int, int]:
    return (i, i) if i % 2 == 0 else (i + 1, i)


def build_complex_F(P: ReesPresentation, length: int) -> BigradedComplex:
    """``... -> B(-2,-2) -t3-> B(-2,-1) -f3-> B`` up to ``F_length``."""
    if length < 1:
        raise ValueError("length must be at least 1")
    base = P.B()
    f3, t3 = P.f[2], P.t[2]
    shifts = [complex_F_shift(i) for i in range(length + 1)]
    maps = [f3 if i % 2 == 1 else t3 for i in range(1, length + 1)]
    labels = ["f3" if i % 2 == 1 else "t3" for i in range(1, length + 1)]
    return BigradedComplex(base, shifts, maps, labels)


def _to_prime(C: BigradedComplex, p: int) -> BigradedComplex:
    F = GF(p)
    ring = C.base.ring.with_field(F)
    base = BigradedQuotient(ring, C.base.ideal.to_ring(ring))
    return BigradedComplex(base, C.shifts, [m.to_ring(ring) for m in C.maps], C.labels)


class _SliceMaps:
    """Matrices of multiplication maps between slices of a bigraded quotient."""

    def __init__(self, base: BigradedQuotient):
        self.base = base
        self.field = base.ring.field
        self._basis: dict = {}
        self._mats: dict = {}

    def basis(self, deg) -> tuple[list, dict]:
        if deg not in self._basis:
            b = self.base.basis(*deg)
            self._basis[deg] = (b, {m: i for i, m in enumerate(b)})
        return self._basis[deg]

    def matrix(self, k: int, phi: Polynomial, src: tuple) -> np.ndarray:
        """Rows: images of the basis of ``src`` under multiplication by ``phi``."""
        key = (k, src)
        if key not in self._mats:
            tgt = tuple(a + b for a, b in zip(src, phi.multidegree()))
            sb, _ = self.basis(src)
            tb, tidx = self.basis(tgt)
            M = np.zeros((len(sb), len(tb)), dtype=np.int64)
            gb = self.base.gb
            for r, m in enumerate(sb):
                prod = {}
                for e, c in phi.coeffs.items():
                    prod[tuple(a + b for a, b in zip(m, e))] = c
                for mm, c in gb.reduce_dict(prod).items():
                    M[r, tidx[mm]] = c
            self._mats[key] = M
        return self._mats[key]


@dataclass
class HomologyTable:
    """``dim H_i(F)_(p,q)`` for positions ``0..length-1`` and the window."""

    dims: dict  # (i, p, q) -> int
    window: tuple[int, int]
    positions: int
    field: str

    def at(self, i: int, p: int, q: int) -> int:
        if p > self.window[0] or q > self.window[1] or i >= self.positions:
            raise WindowExceeded(f"({i}, {p}, {q}) lies outside the window")
        return self.dims[(i, p, q)]

    def support(self, i: int) -> dict:
        return {(p, q): v for (j, p, q), v in sorted(self.dims.items()) if j == i and v}

    def diagonal(self, i: int, upto: int | None = None) -> list[int]:
        upto = min(self.window) if upto is None else upto
        return [self.at(i, d, d) for d in range(upto + 1)]

    def as_dict(self) -> dict:
        return {
            "window": list(self.window),
            "field": self.field,
            "support": {str(i): [[p, q, v] for (p, q), v in self.support(i).items()] for i in range(self.positions)},
        }


def complex_homology(C: BigradedComplex, window: tuple[int, int] = DEFAULT_WINDOW,
                     prime: int | None = None) -> HomologyTable:
    """Graded dimensions of ``H_i`` for ``0 <= i < length`` in bidegrees ``p <= P``, ``q <= Q``.

    Coefficients are taken in GF(p); a complex over Q is reduced modulo
    ``prime`` (default 32003).
    """
    P, Q = window
    if P < 0 or Q < 0:
        raise WindowExceeded("window must be nonnegative")
    if not isinstance(C.base.ring.field, PrimeField):
        C = _to_prime(C, prime or DEFAULT_PRIME)
    F = C.base.ring.field
    sm = _SliceMaps(C.base)
    dims = {}

    def src_deg(i, p, q):
        s = C.shifts[i]
        return (p - s[0], q - s[1])

    def map_matrix(i, p, q):
        # d_i : (F_i)_(p,q) -> (F_{i-1})_(p,q)
        u = src_deg(i, p, q)
        if min(u) < 0 or min(src_deg(i - 1, p, q)) < 0:
            return None
        return sm.matrix(i, C.maps[i - 1], u)

    for i in range(C.length):
        for p in range(P + 1):
            for q in range(Q + 1):
                u = src_deg(i, p, q)
                n = 0 if min(u) < 0 else len(sm.basis(u)[0])
                if n == 0:
                    dims[(i, p, q)] = 0
                    continue
                Mi = map_matrix(i, p, q) if i > 0 else None
                ker = n - (rank(Mi, F) if Mi is not None and Mi.size else 0)
                Mn = map_matrix(i + 1, p, q)
                im = rank(Mn, F) if Mn is not None and Mn.size else 0
                dims[(i, p, q)] = ker - im
    return HomologyTable(dims, window, C.length, F.spec)


# ---------------------------------------------------------------------------
# Segre products and fixtures


def segre_presentation(m: int, n: int, field=None) -> SubalgebraPresentation:
    """``K[x_i t_j]`` presented by the 2-minors of a generic ``m x n`` matrix."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be positive")
    from .arith import QQ

    F = field or QQ
    xs = [f"x{i}" for i in range(1, m + 1)]
    ts = [f"t{j}" for j in range(1, n + 1)]
    R = Ring(xs + ts, field=F)
    gens = [R.gen(i) * R.gen(m + j) for i in range(m) for j in range(n)]
    names = [f"z{i}{j}" for i in range(1, m + 1) for j in range(1, n + 1)]
    pres = subalgebra_presentation(gens, names=names)
    Z = pres.ring
    z = {(i, j): Z.gen(names.index(f"z{i}{j}")) for i in range(1, m + 1) for j in range(1, n + 1)}
    minors = []
    for i1 in range(1, m + 1):
        for i2 in range(i1 + 1, m + 1):
            for j1 in range(1, n + 1):
                for j2 in range(j1 + 1, n + 1):
                    minors.append(z[i1, j1] * z[i2, j2] - z[i1, j2] * z[i2, j1])
    pres.metadata["minors"] = len(minors)
    pres.metadata["minors_match"] = pres.ideal.equals(Ideal(Z, minors))
    return pres


def remark_H(field=None) -> BigradedQuotient:
    """``S / I_2([[x1^2, x2^2, 0], [0, t2, t3]])`` with ``S = K[x1..x3, t1..t3]``."""
    S = bigraded_polynomial_ring(["x1", "x2", "x3"], ["t1", "t2", "t3"], field)
    return BigradedQuotient(S, Ideal(S, S.parse_list("x1^2*t2, x1^2*t3, x2^2*t3")))


def power_slice_dimension(quadrics: Sequence[Polynomial], d: int) -> int:
    """``dim (I^d)_{3d}`` by expanding all products (independent of Groebner bases)."""
    gens = diagonal_generators(quadrics, 1, 1)
    from .presentation import products_span_dimension

    return products_span_dimension(gens, d)
