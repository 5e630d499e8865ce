"""Apolarity for ternary cubics.

Dual forms ``g(x)`` act on primal forms ``F(y)`` as constant-coefficient
differential operators ``g(d/dy0, ..., d/dyn)``.  Catalecticant ranks and the
apolar ideal ``F^perp`` decide where ``[F]`` sits with respect to the Veronese
surface ``V_{2,3}`` and its secant varieties.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .arith import DEFAULT_PRIME, GF, QQ, Field, PrimeField, nullspace, rank
from .groebner import Ideal, krull_dimension, minimal_generating_set
from .poly import Polynomial, Ring, exponents_of_degree

DEFAULT_SEED = 20131
ARONHOLD_SAMPLES = 720


class CharacteristicTooSmall(ValueError):
    pass


class ZeroForm(ValueError):
    pass


class DegenerateSampling(RuntimeError):
    pass


@dataclass(frozen=True)
class DualPair:
    """Primal ring K[y0..yn] and dual ring K[x0..xn] over one field."""

    primal: Ring
    dual: Ring
    degree: int = 3

    def __post_init__(self):
        if self.primal.nvars != self.dual.nvars:
            raise ValueError("primal and dual rings need equal variable counts")
        ch = self.primal.field.characteristic
        if ch and ch <= self.degree:
            raise CharacteristicTooSmall(f"characteristic {ch} <= {self.degree}")


def dual_pair(field: Field = QQ, n: int = 2, degree: int = 3) -> DualPair:
    ys = [f"y{i}" for i in range(n + 1)]
    xs = [f"x{i}" for i in range(n + 1)]
    return DualPair(Ring(ys, field=field), Ring(xs, field=field), degree)


def _check_char(field: Field, d: int):
    ch = field.characteristic
    if ch and ch <= d:
        raise CharacteristicTooSmall(f"characteristic {ch} must exceed {d}")


def apolar_action(g: Polynomial, F: Polynomial) -> Polynomial:
    """``g(d/dy) F`` with ordinary (not divided-power) derivatives."""
    _check_char(F.ring.field, F.total_degree())
    fld = F.ring.field
    out: dict = {}
    for mg, cg in g.coeffs.items():
        for mf, cf in F.coeffs.items():
            if any(a > b for a, b in zip(mg, mf)):
                continue
            fac = 1
            for a, b in zip(mg, mf):
                for j in range(a):
                    fac *= b - j
            e = tuple(b - a for a, b in zip(mg, mf))
            v = fld.add(out.get(e, fld.zero), fld.mul(fld.mul(cg, cf), fld(fac)))
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
    return Polynomial(F.ring, out)


def _pairing_matrix(F: Polynomial, a: int, dual: Ring):
    """Rows: dual monomials of degree ``a``; columns: primal monomials of degree ``c - a``."""
    c = F.total_degree()
    n = F.ring.nvars
    rows = exponents_of_degree(n, a)
    cols = exponents_of_degree(n, c - a)
    index = {m: i for i, m in enumerate(cols)}
    fld = F.ring.field
    M = [[fld.zero] * len(cols) for _ in rows]
    for i, m in enumerate(rows):
        img = apolar_action(dual.monomial(m), F)
        for e, v in img.coeffs.items():
            M[i][index[e]] = v
    return M, rows, cols


def catalecticant(F: Polynomial, a: int, dual: Ring | None = None):
    """Matrix of ``g -> g o F`` from dual forms of degree ``a`` to primal forms of degree ``c - a``.

    Rows are indexed by the degree-``a`` dual monomials (degrevlex), columns by
    the primal monomials of degree ``c - a``.  For ternary cubics and ``a = 1``
    it is the 3 x 6 catalecticant.
    """
    c = F.total_degree()
    if not 1 <= a <= c - 1:
        raise ValueError("need 1 <= a <= deg F - 1")
    if not F.is_homogeneous():
        raise ValueError("F must be homogeneous")
    dual = dual or _default_dual(F.ring)
    M, _, _ = _pairing_matrix(F, a, dual)
    return M


def _default_dual(primal: Ring) -> Ring:
    return Ring([f"x{i}" for i in range(primal.nvars)], field=primal.field)


def catalecticant_rank(F: Polynomial, a: int = 1) -> int:
    return rank(catalecticant(F, a), F.ring.field)


def annihilator_slice(F: Polynomial, d: int, dual: Ring | None = None) -> list[Polynomial]:
    """Basis of ``{g in K[x]_d : g o F = 0}`` (reduced echelon nullspace)."""
    dual = dual or _default_dual(F.ring)
    fld = F.ring.field
    c = F.total_degree()
    mons = exponents_of_degree(F.ring.nvars, d)
    if d > c:
        return [dual.monomial(m) for m in mons]
    M, rows, _ = _pairing_matrix(F, d, dual)
    # g = sum_i a_i x^{m_i}; g o F = sum_i a_i row_i, so solve a^T M = 0
    Mt = [list(col) for col in zip(*M)] if M and M[0] else []
    if not Mt:
        return [dual.monomial(m) for m in mons]
    N = nullspace(Mt, fld)
    basis = []
    for vec in N:
        basis.append(dual.from_dict({m: v for m, v in zip(rows, vec) if v != 0}))
    return basis


def apolar_ideal(F: Polynomial, degree_cap: int | None = None, dual: Ring | None = None) -> Ideal:
    """Minimal generators of ``F^perp`` up to ``degree_cap`` (default ``deg F + 1``)."""
    c = F.total_degree()
    if degree_cap is None:
        degree_cap = c + 1
    if degree_cap < c + 1:
        raise ValueError("degree_cap must be at least deg F + 1")
    dual = dual or _default_dual(F.ring)
    gens: list[Polynomial] = []
    for d in range(1, degree_cap + 1):
        gens.extend(annihilator_slice(F, d, dual))
    return Ideal(dual, minimal_generating_set(Ideal(dual, gens), degree_cap))


# ---------------------------------------------------------------------------
# orbit representatives


def orbit_representatives(ring: Ring | None = None) -> dict[str, Polynomial]:
    ring = ring or Ring(["y0", "y1", "y2"])
    return {
        "F1": ring("y1*y2^2"),
        "F2": ring("y1^3 + y2^3"),
        "F3": ring("y1*y0^2 + y2*y1^2"),
        "F4": ring("y2^2*y1 + y0^3"),
        "F5": ring("y0^3 + y1^3 + y2^3"),
    }


# ---------------------------------------------------------------------------
# stratum classification


class Stratum(enum.Enum):
    OnVeronese = "OnVeronese"
    OnSec1NotV = "OnSec1NotV"
    OnSec2NotSec1 = "OnSec2NotSec1"
    OutsideSec2 = "OutsideSec2"

    @property
    def koszul_prediction(self) -> str:
        return {
            Stratum.OnVeronese: "G-quadratic",
            Stratum.OnSec1NotV: "not quadratic",
            Stratum.OnSec2NotSec1: "not quadratic",
            Stratum.OutsideSec2: "Koszul",
        }[self]

    @property
    def in_sec2(self) -> bool:
        return self is not Stratum.OutsideSec2


@dataclass
class StratumVerdict:
    stratum: Stratum
    catalecticant_rank: int
    quadric_dimension: int
    complete_intersection: bool
    aronhold_value: object = None
    aronhold_agrees: bool | None = None

    def as_dict(self) -> dict:
        d = {
            "stratum": self.stratum.value,
            "catalecticant_rank": self.catalecticant_rank,
            "quadric_dimension": self.quadric_dimension,
            "complete_intersection": self.complete_intersection,
            "prediction": self.stratum.koszul_prediction,
        }
        if self.aronhold_value is not None:
            d["aronhold_value"] = str(self.aronhold_value)
            d["aronhold_agrees"] = self.aronhold_agrees
        return d


def classify_stratum(F: Polynomial, aronhold: "AronholdQuartic | None" = None) -> StratumVerdict:
    """Place ``[F]`` in the secant stratification of the cubic Veronese surface.

    rank of the 3 x 6 catalecticant 1 -> on the surface, 2 -> on the secant
    line variety; rank 3 splits on whether the apolar quadrics cut out a
    zero-dimensional scheme (complete intersection of three quadrics).
    """
    if F.is_zero():
        raise ZeroForm("F = 0 has no stratum")
    if F.ring.nvars != 3 or F.multidegree() is None or F.total_degree() != 3:
        raise ValueError("classify_stratum expects a ternary cubic form")
    r = catalecticant_rank(F, 1)
    quadrics = annihilator_slice(F, 2)
    ci = False
    if r == 3:
        ci = len(quadrics) == 3 and krull_dimension(Ideal(quadrics[0].ring, quadrics)) == 0
    if r == 1:
        s = Stratum.OnVeronese
    elif r == 2:
        s = Stratum.OnSec1NotV
    elif ci:
        s = Stratum.OutsideSec2
    else:
        s = Stratum.OnSec2NotSec1
    verdict = StratumVerdict(s, r, len(quadrics), ci)
    if aronhold is not None:
        val = aronhold.evaluate(F)
        verdict.aronhold_value = val
        verdict.aronhold_agrees = (val == 0) == s.in_sec2
    return verdict


# ---------------------------------------------------------------------------
# Aronhold quartic by interpolation on the Fermat orbit

CUBIC_MONOMIALS = exponents_of_degree(3, 3)


def cubic_coefficients(F: Polynomial) -> list:
    return [F.coefficient(m) for m in CUBIC_MONOMIALS]


def _substitute_linear(F: Polynomial, g: Sequence[Sequence[int]]) -> Polynomial:
    ring = F.ring
    ys = ring.gens()
    images = [sum((ring.constant(g[i][j]) * ys[j] for j in range(3)), ring.zero()) for i in range(3)]
    return F.subs(images, ring)


def random_invertible(rng: random.Random, field: Field, n: int = 3, bound: int = 50):
    while True:
        g = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if rank(g, field) == n:
            return g


def fermat_orbit_sample(rng: random.Random, ring: Ring) -> Polynomial:
    g = random_invertible(rng, ring.field)
    return _substitute_linear(ring("y0^3 + y1^3 + y2^3"), g)


@dataclass
class AronholdQuartic:
    """A quartic in the ten cubic coefficients vanishing on the Fermat orbit."""

    field: Field
    monomials: list  # exponent tuples in 10 variables, degrevlex descending
    coefficients: list
    seed: int
    sample_count: int
    samples: list = field(default_factory=list, repr=False)
    kernel_dimension: int = 1  # dimension of the space of vanishing quartics

    def evaluate_vector(self, a: Sequence) -> object:
        fld = self.field
        a = [fld(x) for x in a]
        total = fld.zero
        for m, c in zip(self.monomials, self.coefficients):
            if c == 0:
                continue
            t = c
            for ai, e in zip(a, m):
                if e:
                    t = fld.mul(t, fld(ai**e))
            total = fld.add(total, t)
        return total

    def evaluate(self, F: Polynomial) -> object:
        return self.evaluate_vector([self.field(c) for c in cubic_coefficients(F)])

    def degree(self) -> int:
        return max(sum(m) for m, c in zip(self.monomials, self.coefficients) if c != 0)

    def to_text(self) -> str:
        fld = self.field
        lines = [
            "# aronhold quartic",
            f"field {fld.spec}",
            f"seed {self.seed}",
            f"samples {self.sample_count}",
            "variables " + " ".join(
                "a_" + "".join(str(x) for x in m) for m in CUBIC_MONOMIALS),
        ]
        for m, c in zip(self.monomials, self.coefficients):
            if c != 0:
                lines.append(" ".join(str(x) for x in m) + " " + str(c))
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "AronholdQuartic":
        from .arith import field_from_spec

        meta: dict = {}
        terms: dict = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(" ")
            if head in ("field", "seed", "samples", "variables"):
                meta[head] = rest
                continue
            parts = line.split()
            terms[tuple(int(x) for x in parts[:10])] = parts[10]
        fld = field_from_spec(meta["field"])
        monos = _quartic_monomials()
        coeffs = [fld(Fraction(terms[m])) if m in terms else fld.zero for m in monos]
        return cls(fld, monos, coeffs, int(meta["seed"]), int(meta["samples"]))

    @classmethod
    def load(cls, path) -> "AronholdQuartic":
        return cls.from_text(Path(path).read_text())

    def as_json(self) -> str:
        return json.dumps({
            "field": self.field.spec,
            "seed": self.seed,
            "samples": self.sample_count,
            "terms": [[list(m), str(c)] for m, c in zip(self.monomials, self.coefficients) if c != 0],
        })


def _quartic_monomials() -> list:
    # lex-descending, so the normalization fixes the lexicographically first coefficient
    return sorted(exponents_of_degree(10, 4), reverse=True)


def build_aronhold(seed: int = DEFAULT_SEED, sample_count: int = ARONHOLD_SAMPLES,
                   field: Field | None = None) -> AronholdQuartic:
    """Interpolate the quartic vanishing on ``sample_count`` Fermat-orbit points.

    There are 715 quartic monomials in ten coefficients; with at least 720
    random orbit points the vanishing quartics form a one-dimensional space,
    spanned by the Aronhold invariant.
    """
    if sample_count < ARONHOLD_SAMPLES:
        raise ValueError(f"need at least {ARONHOLD_SAMPLES} samples")
    fld = field or GF(DEFAULT_PRIME)
    if not isinstance(fld, PrimeField):
        raise ValueError("the interpolation oracle is built over a prime field")
    p = fld.p
    rng = random.Random(seed)
    ring = Ring(["y0", "y1", "y2"], field=fld)
    monos = _quartic_monomials()
    exps = np.array(monos, dtype=np.int64)  # 715 x 10
    rows = []
    samples = []
    for _ in range(sample_count):
        F = fermat_orbit_sample(rng, ring)
        a = np.array(cubic_coefficients(F), dtype=np.int64)
        samples.append(F)
        # evaluate every quartic monomial at a
        pw = np.ones((5, 10), dtype=np.int64)
        for k in range(1, 5):
            pw[k] = pw[k - 1] * a % p
        vals = np.ones(len(monos), dtype=np.int64)
        for j in range(10):
            vals = vals * pw[exps[:, j], j] % p
        rows.append(vals)
    N = nullspace(np.array(rows, dtype=np.int64), fld)
    if N.shape[0] != 1:
        raise DegenerateSampling(f"vanishing space has dimension {N.shape[0]}; retry with another seed")
    vec = N[0]
    nz = int(np.flatnonzero(vec)[0])
    vec = vec * pow(int(vec[nz]), p - 2, p) % p
    return AronholdQuartic(fld, monos, [int(v) for v in vec], seed, sample_count, samples, N.shape[0])
