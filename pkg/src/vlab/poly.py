"""Sparse multivariate polynomials with multigradings and monomial orders.

A polynomial is an immutable map ``exponent tuple -> nonzero coefficient``
living in a :class:`Ring`.  The ring carries the variable names, a grading
vector per variable, the coefficient field and the monomial order used to
sort terms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .arith import QQ, Field, PrimeField

MAX_EXPONENT = 2**15 - 1


class IncompatibleRings(ValueError):
    pass


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders
#
# Every order maps an exponent tuple to a flat tuple of ints; a larger key is a
# larger monomial.  Flat keys of equal length compare lexicographically, which
# lets heaps and sorts use them directly.


class MonomialOrder:
    kind = "abstract"

    def key(self, e: Sequence[int]) -> tuple:
        raise NotImplementedError

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))


class Lex(MonomialOrder):
    kind = "lex"

    def key(self, e):
        return tuple(e)

    def __repr__(self):
        return "Lex()"


class DegRevLex(MonomialOrder):
    kind = "degrevlex"

    def key(self, e):
        return (sum(e),) + tuple(-x for x in reversed(e))

    def __repr__(self):
        return "DegRevLex()"


class WeightThen(MonomialOrder):
    """Compare by a weight vector first, then by a tie-breaking order."""

    kind = "weight"

    def __init__(self, weights: Sequence[int], tiebreak: MonomialOrder | None = None):
        self.weights = tuple(weights)
        self.tiebreak = tiebreak or DegRevLex()

    def key(self, e):
        return (sum(w * x for w, x in zip(self.weights, e)),) + self.tiebreak.key(e)

    def __repr__(self):
        return f"WeightThen({list(self.weights)}, {self.tiebreak!r})"


class Block(MonomialOrder):
    """Product order over blocks of variables.

    ``blocks`` lists variable indices; the first block dominates.  When the
    first block holds the variables to eliminate this is an elimination order:
    any monomial involving them beats every monomial that does not.
    """

    kind = "block"

    def __init__(self, blocks: Sequence[Sequence[int]], inner: Sequence[MonomialOrder] | None = None):
        self.blocks = tuple(tuple(b) for b in blocks)
        self.inner = tuple(inner) if inner is not None else tuple(DegRevLex() for _ in self.blocks)
        if len(self.inner) != len(self.blocks):
            raise ValueError("one inner order per block")

    @classmethod
    def first(cls, nfirst: int, nvars: int, inner=None) -> "Block":
        return cls([range(nfirst), range(nfirst, nvars)], inner)

    def key(self, e):
        out: tuple = ()
        for idx, order in zip(self.blocks, self.inner):
            out += order.key(tuple(e[i] for i in idx))
        return out

    def __repr__(self):
        return f"Block({[list(b) for b in self.blocks]}, {list(self.inner)!r})"


def order_from_name(name: str) -> MonomialOrder:
    name = name.lower()
    if name == "lex":
        return Lex()
    if name in ("degrevlex", "grevlex"):
        return DegRevLex()
    raise ValueError(f"unknown order {name!r}")


def compare(m1: Sequence[int], m2: Sequence[int], order: MonomialOrder) -> int:
    """-1, 0, 1 as ``m1`` is smaller than, equal to, or larger than ``m2``."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Polynomial ring descriptor: names, grading, field and term order."""

    def __init__(
        self,
        names: Sequence[str],
        grading: Sequence[Sequence[int]] | None = None,
        field: Field = QQ,
        order: MonomialOrder | None = None,
    ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if grading is None:
            grading = [(1,)] * len(self.names)
        self.grading = tuple(tuple(int(x) for x in g) for g in grading)
        if len(self.grading) != len(self.names):
            raise ValueError("one grading vector per variable")
        if self.grading and len({len(g) for g in self.grading}) != 1:
            raise ValueError("grading vectors must share a length")
        for g in self.grading:
            if any(x < 0 for x in g) or not any(g):
                raise ValueError("grading vectors must be nonnegative and nonzero")
        self.field = field
        self.order = order or DegRevLex()
        self.index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def grading_rank(self) -> int:
        return len(self.grading[0]) if self.grading else 1

    def _sig(self):
        # the term order is presentation metadata, not part of the ring
        return (self.names, self.grading, self.field)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"Ring({list(self.names)}, field={self.field!r}, order={self.order!r})"

    # constructors ---------------------------------------------------------
    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.names, self.grading, self.field, order)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.names, self.grading, field, self.order)

    def with_grading(self, grading) -> "Ring":
        return Ring(self.names, grading, self.field, self.order)

    def gen(self, name_or_index) -> "Polynomial":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c != 0 else {})

    def from_dict(self, terms: Mapping[tuple, object]) -> "Polynomial":
        F = self.field
        out = {}
        for m, c in terms.items():
            c = F(c)
            if c != 0:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def parse_list(self, text: str) -> list["Polynomial"]:
        """Comma, semicolon or newline separated polynomials."""
        parts = [s for s in re.split(r"[,;\n]", text) if s.strip()]
        return [self.parse(s) for s in parts]

    def monomial_degree(self, e: Sequence[int]) -> tuple[int, ...]:
        k = self.grading_rank
        return tuple(sum(x * g[j] for x, g in zip(e, self.grading)) for j in range(k))

    def monomials_of_degree(self, deg) -> list[tuple[int, ...]]:
        """All exponent tuples of a given multidegree, in descending ring order."""
        deg = (deg,) if isinstance(deg, int) else tuple(deg)
        out: list[tuple[int, ...]] = []
        n = self.nvars
        grading = self.grading

        def rec(i, rem, acc):
            if i == n:
                if not any(rem):
                    out.append(tuple(acc))
                return
            g = grading[i]
            k = 0
            r = rem
            while all(x >= 0 for x in r):
                acc.append(k)
                rec(i + 1, r, acc)
                acc.pop()
                if not any(g):
                    break
                k += 1
                r = tuple(a - b for a, b in zip(r, g))

        rec(0, deg, [])
        out.sort(key=self.order.key, reverse=True)
        return out


def standard_ring(names, field: Field = QQ, order: MonomialOrder | None = None) -> Ring:
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return Ring(names, None, field, order)


def bigraded_ring(xs: Sequence[str], ts: Sequence[str], field: Field = QQ, order=None) -> Ring:
    """``deg x = (1,0)``, ``deg t = (0,1)``."""
    grading = [(1, 0)] * len(xs) + [(0, 1)] * len(ts)
    return Ring(list(xs) + list(ts), grading, field, order)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("ring", "_terms", "__dict__")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self._terms = terms

    # basic protocol -------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    @cached_property
    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms sorted descending by the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lm(self) -> tuple[int, ...]:
        return self.terms[0][0]

    def lc(self):
        return self.terms[0][1]

    def monomials(self) -> list[tuple[int, ...]]:
        return [m for m, _ in self.terms]

    def coefficient(self, exps) -> object:
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise IncompatibleRings(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = F.add(out.get(m, 0), c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self._terms.items()})

    def mul_term(self, exps: Sequence[int], c) -> "Polynomial":
        F = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): F.mul(a, c) for m, a in self._terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        F = self.ring.field
        out: dict = {}
        p = F.p if isinstance(F, PrimeField) else None
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p is not None:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c != 0}
        if out and max(max(m) for m in out) > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # gradings -------------------------------------------------------------
    def multidegree(self) -> tuple[int, ...] | None:
        """Common multidegree of all terms, or ``None`` if inhomogeneous (or zero)."""
        degs = {self.ring.monomial_degree(m) for m in self._terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.multidegree() is not None

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(w * x for w, x in zip(weights, m)) for m in self._terms), default=-1)

    def support_vars(self) -> set[int]:
        return {i for m in self._terms for i, x in enumerate(m) if x}

    # calculus / substitution --------------------------------------------
    def diff(self, i: int, k: int = 1) -> "Polynomial":
        F = self.ring.field
        out = {}
        for m, c in self._terms.items():
            if m[i] < k:
                continue
            fac = 1
            for j in range(k):
                fac *= m[i] - j
            v = F.mul(c, F(fac))
            if v != 0:
                e = list(m)
                e[i] -= k
                out[tuple(e)] = v
        return Polynomial(self.ring, out)

    def subs(self, images: Sequence["Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Substitute ``images[i]`` for the i-th variable."""
        target = ring or images[0].ring
        result = target.zero()
        powers: dict = {}
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def to_ring(self, ring: Ring, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Move into ``ring`` matching variables by name (optionally renamed)."""
        mapping = mapping or {}
        idx = []
        for i, n in enumerate(self.ring.names):
            target = mapping.get(n, n)
            idx.append(ring.index.get(target))
        F = ring.field
        out: dict = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    if idx[i] is None:
                        raise IncompatibleRings(f"variable {self.ring.names[i]} missing in target ring")
                    e[idx[i]] += x
            v = F(c)
            if v != 0:
                out[tuple(e)] = v
        return Polynomial(ring, out)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    # printing ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# text format: terms joined by + / -, coefficients as integers or a/b,
# monomials as x0^2*x1.

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def _coeff_str(c, field: Field) -> str:
    if isinstance(field, PrimeField):
        return str(field.lift(c))
    return str(c)


def format_monomial(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for n, x in zip(names, e):
        if x == 1:
            parts.append(n)
        elif x > 1:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.terms:
        s = _coeff_str(c, f.ring.field)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = format_monomial(m, f.ring.names)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    F = ring.field
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        num, name, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", caret))
        elif star:
            tokens.append(("*", star))
        elif sign:
            tokens.append(("sign", sign))
    terms: dict = {}
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected + or - in {text!r}")
        first = False
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        seen = False
        while i < n and tokens[i][0] != "sign":
            kind, val = tokens[i]
            if not expect_factor:
                if kind != "*":
                    raise ParseError(f"expected * in {text!r}")
                expect_factor = True
                i += 1
                continue
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                if val not in ring.index:
                    raise ParseError(f"unknown variable {val!r}")
                power = 1
                i += 1
                if i < n and tokens[i][0] == "^":
                    if i + 1 >= n or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                        raise ParseError(f"bad exponent in {text!r}")
                    power = int(tokens[i + 1][1])
                    i += 2
                exps[ring.index[val]] += power
            else:
                raise ParseError(f"unexpected {val!r} in {text!r}")
            expect_factor = False
            seen = True
        if not seen or expect_factor:
            raise ParseError(f"dangling operator in {text!r}")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return ring.from_dict({m: c for m, c in terms.items() if c != 0})


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def multidegree(f: Polynomial):
    return f.multidegree()


def monomials_up_to(nvars: int, degree: int) -> Iterable[tuple[int, ...]]:
    for d in range(degree + 1):
        yield from exponents_of_degree(nvars, d)


def exponents_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree ``d`` in descending degrevlex order."""
    out: list[tuple[int, ...]] = []

    def rec(i, rem, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [rem]))
            return
        for k in range(rem, -1, -1):
            rec(i + 1, rem - k, acc + [k])

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    out.sort(key=DegRevLex().key, reverse=True)
    return out
