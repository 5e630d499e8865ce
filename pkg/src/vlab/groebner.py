"""Buchberger's algorithm and the ideal operations built on it.

The engine works on plain ``dict`` polynomials (exponent tuple -> coefficient)
and caches negated order keys per monomial so that a ``heapq`` min-heap pops
the leading monomial.  Pair selection is the normal strategy (smallest lcm
degree first, ties broken by the term order) with the Gebauer-Moeller
installation of Buchberger's coprime and chain criteria.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import PrimeField, rank
from .poly import Block, DegRevLex, IncompatibleRings, MonomialOrder, Polynomial, Ring

DEFAULT_BUDGET_PAIRS = 200_000
DEFAULT_BUDGET_BASIS = 50_000


class BudgetExceeded(RuntimeError):
    pass


class ZeroRing(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


@dataclass
class Budget:
    pairs: int = DEFAULT_BUDGET_PAIRS
    basis: int = DEFAULT_BUDGET_BASIS


@dataclass
class GBStats:
    pairs_processed: int = 0
    pairs_skipped_by_criteria: int = 0
    zero_reductions: int = 0
    truncated: bool = False


# ---------------------------------------------------------------------------
# engine


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Engine:
    """Order- and field-specific helpers shared by one computation."""

    def __init__(self, ring: Ring, order: MonomialOrder, weights: Sequence[int] | None = None):
        self.ring = ring
        self.field = ring.field
        self.p = ring.field.p if isinstance(ring.field, PrimeField) else None
        self.keyf = order.key
        self._nk: dict = {}
        if weights is None:
            weights = [sum(g) for g in ring.grading]
        self.weights = tuple(weights)

    def nk(self, m):
        r = self._nk.get(m)
        if r is None:
            r = tuple(-k for k in self.keyf(m))
            self._nk[m] = r
        return r

    def deg(self, m) -> int:
        return sum(w * x for w, x in zip(self.weights, m))

    def lead(self, f: dict):
        return min(f, key=self.nk)

    def sorted_terms(self, f: dict) -> list:
        nk = self.nk
        return sorted(f.items(), key=lambda t: nk(t[0]))

    def make_monic(self, f: dict) -> list:
        terms = self.sorted_terms(f)
        lc = terms[0][1]
        if lc != 1:
            inv = self.field.inv(lc)
            p = self.p
            if p:
                terms = [(m, c * inv % p) for m, c in terms]
            else:
                terms = [(m, c * inv) for m, c in terms]
        return terms

    def reduce(self, f: dict, reducers: list, full: bool = True) -> dict:
        """Normal form of ``f`` by monic sorted-term lists ``reducers``."""
        if not f or not reducers:
            return dict(f)
        f = dict(f)
        p = self.p
        nk = self.nk
        heap = [(nk(m), m) for m in f]
        heapq.heapify(heap)
        lms = [(r[0][0], r) for r in reducers]
        rem: dict = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            _, m = pop(heap)
            c = f.get(m)
            if c is None:
                continue
            red = None
            for lm, r in lms:
                if _divides(lm, m):
                    red = r
                    break
            del f[m]
            if red is None:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            q = tuple(x - y for x, y in zip(m, red[0][0]))
            for mg, cg in red[1:]:
                mm = tuple(x + y for x, y in zip(mg, q))
                v = f.get(mm)
                if v is None:
                    v = -c * cg
                    if p:
                        v %= p
                    f[mm] = v
                    push(heap, (nk(mm), mm))
                else:
                    v = v - c * cg
                    if p:
                        v %= p
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
        return rem

    def spoly(self, a: list, b: list, lcm) -> dict:
        p = self.p
        qa = tuple(x - y for x, y in zip(lcm, a[0][0]))
        qb = tuple(x - y for x, y in zip(lcm, b[0][0]))
        out: dict = {}
        for m, c in a[1:]:
            out[tuple(x + y for x, y in zip(m, qa))] = c
        for m, c in b[1:]:
            mm = tuple(x + y for x, y in zip(m, qb))
            v = out.get(mm, 0) - c
            if p:
                v %= p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out


def _interreduce(eng: _Engine, elems: list[list]) -> list[list]:
    elems = sorted(elems, key=lambda t: eng.nk(t[0][0]), reverse=True)
    minimal: list[list] = []
    for g in elems:
        if not any(_divides(h[0][0], g[0][0]) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        nf = eng.reduce(dict(g), others)
        out.append(eng.make_monic(nf))
    out.sort(key=lambda t: eng.nk(t[0][0]))
    return out


def _buchberger_core(
    eng: _Engine,
    inputs: list[dict],
    budget: Budget,
    degree_cap: int | None,
    stats: GBStats,
) -> list[list]:
    G: list[list] = []
    lms: list = []
    active: list[int] = []
    heap: list = []
    live: set = set()
    counter = itertools.count()

    def install(h: list):
        hi = len(G)
        G.append(h)
        lh = h[0][0]
        lms.append(lh)
        if len(G) > budget.basis:
            raise BudgetExceeded(f"basis size exceeded {budget.basis}")
        # Gebauer-Moeller update
        C = [(g, _lcm(lh, lms[g])) for g in active]
        D = []
        while C:
            g1, l1 = C.pop(0)
            if _coprime(lh, lms[g1]) or not any(
                _divides(l2, l1) for _, l2 in itertools.chain(C, D)
            ):
                D.append((g1, l1))
        E = []
        for g, l in D:
            if _coprime(lh, lms[g]):
                stats.pairs_skipped_by_criteria += 1
            else:
                E.append((g, l))
        dead = []
        for pr in live:
            g1, g2, l = pr
            if (
                _divides(lh, l)
                and _lcm(lms[g1], lh) != l
                and _lcm(lms[g2], lh) != l
            ):
                dead.append(pr)
        for pr in dead:
            live.discard(pr)
            stats.pairs_skipped_by_criteria += 1
        for g, l in E:
            pr = (g, hi, l)
            live.add(pr)
            heapq.heappush(heap, (eng.deg(l), tuple(-k for k in eng.nk(l)), next(counter), pr))
        active[:] = [g for g in active if not _divides(lh, lms[g])]
        active.append(hi)

    def reducers():
        return [G[i] for i in active]

    # seed with the inputs, smallest leading monomial first
    seeds = []
    for f in inputs:
        if f:
            seeds.append(f)
    seeds.sort(key=lambda f: eng.nk(eng.lead(f)), reverse=True)
    for f in seeds:
        if degree_cap is not None and eng.deg(eng.lead(f)) > degree_cap:
            stats.truncated = True
            continue
        r = eng.reduce(f, reducers())
        if r:
            install(eng.make_monic(r))
            if all(x == 0 for x in G[-1][0][0]):
                return [G[-1]]

    while heap:
        d, _, _, pr = heapq.heappop(heap)
        if pr not in live:
            continue
        live.discard(pr)
        if degree_cap is not None and d > degree_cap:
            stats.truncated = True
            continue
        stats.pairs_processed += 1
        if stats.pairs_processed > budget.pairs:
            raise BudgetExceeded(f"pair budget {budget.pairs} exhausted")
        g1, g2, l = pr
        s = eng.spoly(G[g1], G[g2], l)
        r = eng.reduce(s, reducers())
        if not r:
            stats.zero_reductions += 1
            continue
        install(eng.make_monic(r))
        if all(x == 0 for x in G[-1][0][0]):
            return [G[-1]]
    return _interreduce(eng, [G[i] for i in active])


# ---------------------------------------------------------------------------
# public types


class Ideal:
    """An ideal given by generators in a polynomial ring."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial]):
        self.ring = ring
        out = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise IncompatibleRings(f"generator {g} not in {ring}")
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def groebner(
        self,
        order: MonomialOrder | None = None,
        budget: Budget | None = None,
        degree_cap: int | None = None,
        weights: Sequence[int] | None = None,
    ) -> "GroebnerBasis":
        order = order or self.ring.order
        key = (repr(order), degree_cap, tuple(weights) if weights else None)
        if key not in self._gb:
            self._gb[key] = buchberger(self, order, budget=budget, degree_cap=degree_cap, weights=weights)
        return self._gb[key]

    def is_homogeneous(self) -> bool:
        return all(g.multidegree() is not None for g in self.gens)

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def equals(self, other: "Ideal") -> bool:
        """Equality via reduced Groebner bases under the ring order."""
        if other.ring != self.ring:
            raise IncompatibleRings("ideals in different rings")
        a = self.groebner(self.ring.order)
        b = other.groebner(self.ring.order)
        return a.elements == b.elements

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def __mul__(self, other: "Ideal"):
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def subset_of(self, other: "Ideal") -> bool:
        gb = other.groebner()
        return all(gb.contains(g) for g in self.gens)

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])


class GroebnerBasis:
    """Reduced Groebner basis of an ideal under a fixed order.

    ``truncated_at`` is set when the computation was cut at a degree; the
    elements are then a basis of the ideal only up to that degree.
    """

    def __init__(self, ideal: Ideal, order: MonomialOrder, elements: list[Polynomial],
                 truncated_at: int | None = None, stats: GBStats | None = None,
                 weights: Sequence[int] | None = None):
        self.origin = ideal
        self.order = order
        self.ring = ideal.ring.with_order(order)
        self.elements = elements
        self.truncated_at = truncated_at
        self.stats = stats or GBStats()
        self._engine = _Engine(self.ring, order, weights)
        self._terms = [self._engine.make_monic(dict(g.coeffs)) for g in elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, order={self.order!r})"

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [t[0][0] for t in self._terms]

    def is_unit(self) -> bool:
        return any(all(x == 0 for x in m) for m in self.leading_monomials())

    def reduce_dict(self, f: dict) -> dict:
        return self._engine.reduce(f, self._terms)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise IncompatibleRings(f"{f.ring} vs {self.ring}")
        return Polynomial(self.ring, self._engine.reduce(dict(f.coeffs), self._terms))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_standard(self, m: Sequence[int]) -> bool:
        m = tuple(m)
        return not any(_divides(l, m) for l in self.leading_monomials())

    def satisfies_buchberger_criterion(self) -> bool:
        """Every S-pair reduces to zero (checked exhaustively, no criteria)."""
        eng = self._engine
        T = self._terms
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                l = _lcm(T[i][0][0], T[j][0][0])
                if eng.reduce(eng.spoly(T[i], T[j], l), T):
                    return False
        return True

    def is_reduced(self) -> bool:
        lms = self.leading_monomials()
        for i, t in enumerate(self._terms):
            if t[0][1] != 1:
                return False
            for j, l in enumerate(lms):
                if i != j and any(_divides(l, m) for m, _ in t):
                    return False
        return True


def buchberger(
    I: Ideal,
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
    degree_cap: int | None = None,
    weights: Sequence[int] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``.

    With ``degree_cap`` (meaningful for ideals homogeneous w.r.t. ``weights``)
    S-pairs of larger weighted degree are skipped, giving a basis that is
    correct in all degrees up to the cap.
    """
    order = order or I.ring.order
    budget = budget or Budget()
    ring = I.ring.with_order(order)
    eng = _Engine(ring, order, weights)
    stats = GBStats()
    terms = _buchberger_core(eng, [dict(g.coeffs) for g in I.gens], budget, degree_cap, stats)
    elements = [Polynomial(ring, dict(t)) for t in terms]
    truncated = degree_cap if stats.truncated else None
    return GroebnerBasis(I, order, elements, truncated, stats, weights)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


# ---------------------------------------------------------------------------
# elimination, intersection, colon


def subring(ring: Ring, keep: Sequence[int]) -> Ring:
    return Ring([ring.names[i] for i in keep], [ring.grading[i] for i in keep], ring.field)


def eliminate(
    I: Ideal,
    vars_to_remove: Iterable,
    budget: Budget | None = None,
    degree_cap: int | None = None,
    weights: Sequence[int] | None = None,
) -> Ideal:
    """``I`` intersected with the subring on the remaining variables.

    The result lives in the subring; its generators are a Groebner basis for
    degrevlex there, which is cached on the returned ideal.
    """
    ring = I.ring
    remove = {ring.index[v] if isinstance(v, str) else v for v in vars_to_remove}
    elim = [i for i in range(ring.nvars) if i in remove]
    keep = [i for i in range(ring.nvars) if i not in remove]
    order = Block([elim, keep], [DegRevLex(), DegRevLex()])
    gb = I.groebner(order, budget=budget, degree_cap=degree_cap, weights=weights)
    sub = subring(ring, keep)
    gens = []
    for g in gb.elements:
        if all(m[i] == 0 for m in g.coeffs for i in elim):
            gens.append(Polynomial(sub, {tuple(m[i] for i in keep): c for m, c in g.coeffs.items()}))
    J = Ideal(sub, gens)
    sub_weights = [weights[i] for i in keep] if weights else None
    J._gb[(repr(DegRevLex()), degree_cap if gb.truncated_at is not None else None,
           tuple(sub_weights) if sub_weights else None)] = GroebnerBasis(
        J, DegRevLex(), [g for g in gens], gb.truncated_at, gb.stats, sub_weights)
    J.elimination_basis = gb
    return J


def _aux_ring(ring: Ring, name: str = "_u") -> Ring:
    while name in ring.index:
        name += "_"
    k = ring.grading_rank
    return Ring((name,) + ring.names, [(1,) + (0,) * (k - 1)] + list(ring.grading), ring.field)


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``I ∩ J`` via elimination of an auxiliary variable from ``uI + (1-u)J``."""
    if I.ring != J.ring:
        raise IncompatibleRings("ideals in different rings")
    ring = I.ring
    big = _aux_ring(ring)
    u = big.gen(0)
    mapping = {n: n for n in ring.names}
    gens = [u * f.to_ring(big, mapping) for f in I.gens]
    gens += [(1 - u) * g.to_ring(big, mapping) for g in J.gens]
    E = eliminate(Ideal(big, gens), [0], budget=budget)
    return Ideal(ring, [g.to_ring(ring) for g in E.gens])


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient ``h / f``; raises ``ValueError`` when ``f`` does not divide ``h``."""
    ring = h.ring
    eng = _Engine(ring, ring.order)
    F = ring.field
    ft = eng.make_monic(dict(f.coeffs))
    lcf = f.terms[0][1]
    # f = lcf * ft
    r = dict(h.coeffs)
    q: dict = {}
    while r:
        m = eng.lead(r)
        lm = ft[0][0]
        if not _divides(lm, m):
            raise ValueError(f"{f} does not divide {h}")
        c = r[m]
        e = tuple(x - y for x, y in zip(m, lm))
        q[e] = F.add(q.get(e, F.zero), F.div(c, lcf))
        for mg, cg in ft:
            mm = tuple(x + y for x, y in zip(mg, e))
            v = F.sub(r.get(mm, F.zero), F.mul(c, cg))
            if v == 0:
                r.pop(mm, None)
            else:
                r[mm] = v
    return Polynomial(ring, {m: c for m, c in q.items() if c != 0})


def colon(I: Ideal, f: Polynomial, budget: Budget | None = None) -> Ideal:
    """Ideal quotient ``I : f`` computed as ``(I ∩ (f)) / f``."""
    if f.is_zero():
        raise ValueError("colon by zero")
    K = intersect(I, Ideal(I.ring, [f]), budget=budget)
    return Ideal(I.ring, [divide_exact(h, f) for h in K.gens])


def colon_ideal(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``I : J`` as the intersection of ``I : g`` over the generators of ``J``."""
    out = None
    for g in J.gens:
        Q = colon(I, g, budget)
        out = Q if out is None else intersect(out, Q, budget)
    return out if out is not None else Ideal(I.ring, [I.ring.one()])


# ---------------------------------------------------------------------------
# dimension


def krull_dimension(I: Ideal) -> int:
    """Krull dimension of ``ring / I`` from the leading-term ideal."""
    gb = I.groebner()
    if gb.is_unit():
        raise ZeroRing("the ideal is the whole ring")
    n = I.ring.nvars
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in gb.leading_monomials()]
    supports = [s for s in supports if not any(t < s for t in supports)]
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def codimension(I: Ideal) -> int:
    return I.ring.nvars - krull_dimension(I)


def is_complete_intersection(I: Ideal) -> bool:
    """True when the given generators are a regular sequence (codim = #gens)."""
    try:
        return codimension(I) == len(I.gens)
    except ZeroRing:
        return False


# ---------------------------------------------------------------------------
# Hilbert series


@lru_cache(maxsize=None)
def _count_monomials(grading: tuple, deg: tuple) -> int:
    if not grading:
        return 1 if not any(deg) else 0
    g, rest = grading[0], grading[1:]
    total = 0
    d = deg
    while all(x >= 0 for x in d):
        total += _count_monomials(rest, d)
        d = tuple(a - b for a, b in zip(d, g))
    return total


def _mono_deg(m, grading) -> tuple:
    k = len(grading[0])
    return tuple(sum(x * g[j] for x, g in zip(m, grading)) for j in range(k))


def _minimalize(gens) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(_divides(h, m) for h in out):
            out.append(m)
    return out


def _poly_add(a: dict, b: dict, sign: int = 1, shift=None) -> dict:
    out = dict(a)
    for k, v in b.items():
        if shift is not None:
            k = tuple(x + y for x, y in zip(k, shift))
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _hilbert_numerator(gens: tuple, grading: tuple) -> dict:
    k = len(grading[0])
    zero = (0,) * k
    memo: dict = {}

    def rec(gs: tuple) -> dict:
        if gs in memo:
            return memo[gs]
        if not gs:
            res = {zero: 1}
        else:
            pure = None
            for m in gs:
                if sum(1 for x in m if x) > 1:
                    pure = m
                    break
            coprime = all(_coprime(a, b) for a, b in itertools.combinations(gs, 2))
            if coprime:
                res = {zero: 1}
                for m in gs:
                    res = _poly_add(res, res, -1, _mono_deg(m, grading))
            else:
                # pivot on a variable power taken from a generator that is not a pure power
                if pure is None:
                    pure = gs[0]
                counts = Counter(i for m in gs for i, x in enumerate(m) if x)
                i = max((j for j, x in enumerate(pure) if x), key=lambda j: (counts[j], -j))
                e = pure[i]
                piv = tuple(e if j == i else 0 for j in range(len(pure)))
                with_piv = tuple(_minimalize(list(gs) + [piv]))
                quo = tuple(_minimalize(
                    [tuple(max(x - (e if j == i else 0), 0) for j, x in enumerate(m)) for m in gs]))
                res = _poly_add(rec(with_piv), rec(quo), 1, _mono_deg(piv, grading))
        memo[gs] = res
        return res

    return rec(tuple(_minimalize(gens)))


@dataclass
class HilbertSeries:
    """``numerator / prod_i (1 - T^{deg x_i})`` with an integer numerator."""

    numerator: dict
    denominator: tuple
    ring_grading: tuple = field(repr=False, default=())

    def dimension(self, deg) -> int:
        deg = (deg,) if isinstance(deg, int) else tuple(deg)
        total = 0
        for u, c in self.numerator.items():
            d = tuple(a - b for a, b in zip(deg, u))
            if all(x >= 0 for x in d):
                total += c * _count_monomials(self.ring_grading, d)
        return total

    def series(self, upto: int) -> list[int]:
        """Coefficients of T^0..T^upto (single grading only)."""
        return [self.dimension((d,)) for d in range(upto + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, HilbertSeries)
            and self.numerator == other.numerator
            and Counter(self.denominator) == Counter(other.denominator)
        )

    def numerator_str(self, names=("T", "U")) -> str:
        terms = []
        for u in sorted(self.numerator, key=lambda v: (sum(v), v)):
            c = self.numerator[u]
            mono = "*".join(
                (names[j] if x == 1 else f"{names[j]}^{x}") for j, x in enumerate(u) if x)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def hilbert_series(I: Ideal) -> HilbertSeries:
    if not I.is_homogeneous():
        raise NotHomogeneous("hilbert_series needs a multihomogeneous ideal")
    gb = I.groebner()
    grading = I.ring.grading
    num = _hilbert_numerator(tuple(gb.leading_monomials()), grading)
    return HilbertSeries(num, grading, grading)


def hilbert_series_of_monomials(monomials: Sequence[Sequence[int]], ring: Ring) -> HilbertSeries:
    num = _hilbert_numerator(tuple(tuple(m) for m in monomials), ring.grading)
    return HilbertSeries(num, ring.grading, ring.grading)


# ---------------------------------------------------------------------------
# minimal generators


def _degree_key(ring: Ring, v: tuple):
    return v[0] if ring.grading_rank == 1 else v


def _coeff_row(f: Polynomial, index: dict, ncols: int, field) -> list:
    row = [0] * ncols
    for m, c in f.coeffs.items():
        row[index[m]] = c
    return row


def minimal_generating_set(I: Ideal, degree_cap: int) -> list[Polynomial]:
    """A minimal homogeneous generating set of ``I`` up to ``degree_cap``.

    The cap bounds the coarse degree (sum of the multidegree components).
    A generator of degree ``v`` is kept when it is not in the span of
    ``ring_{v-w} * I_w`` for the lower degrees ``w``.
    """
    ring = I.ring
    F = ring.field
    if not I.is_homogeneous():
        raise NotHomogeneous("minimal generators need homogeneous generators")
    by_deg: dict = {}
    for g in I.gens:
        by_deg.setdefault(g.multidegree(), []).append(g)
    targets = sorted({v for v in by_deg if sum(v) <= degree_cap}, key=lambda v: (sum(v), v))
    chosen: list[Polynomial] = []
    for v in targets:
        mons = ring.monomials_of_degree(v)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for w, gs in by_deg.items():
            if w == v:
                continue
            d = tuple(a - b for a, b in zip(v, w))
            if any(x < 0 for x in d):
                continue
            for m in ring.monomials_of_degree(d):
                for g in gs:
                    rows.append(_coeff_row(g.mul_term(m, F.one), index, len(mons), F))
        base = rank(rows, F) if rows else 0
        for g in by_deg[v]:
            trial = rows + [_coeff_row(g, index, len(mons), F)]
            r = rank(trial, F)
            if r > base:
                rows = trial
                base = r
                chosen.append(g)
    return chosen


def min_generators(I: Ideal, degree_cap: int) -> Counter:
    """Degrees (multiset) of a minimal homogeneous generating set up to the cap."""
    ring = I.ring
    return Counter(_degree_key(ring, g.multidegree()) for g in minimal_generating_set(I, degree_cap))


def ideal_slice_rank(I: Ideal, deg) -> int:
    """``dim_K I_deg`` computed directly from products of generators."""
    ring = I.ring
    F = ring.field
    deg = (deg,) if isinstance(deg, int) else tuple(deg)
    mons = ring.monomials_of_degree(deg)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in I.gens:
        w = g.multidegree()
        if w is None:
            raise NotHomogeneous("ideal_slice_rank needs homogeneous generators")
        d = tuple(a - b for a, b in zip(deg, w))
        if any(x < 0 for x in d):
            continue
        for m in ring.monomials_of_degree(d):
            rows.append(_coeff_row(g.mul_term(m, F.one), index, len(mons), F))
    return rank(rows, F) if rows else 0
