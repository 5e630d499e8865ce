"""Exact coefficient fields and dense linear algebra over them.

Two kinds of field are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields GF(p) (elements are plain ``int``
values in ``[0, p)``; the modulus lives on the field descriptor, never on the
element).  Matrices over GF(p) are ``numpy.int64`` arrays, which keeps all
products below 2**62 for the primes used here.  Matrices over Q are handled by
a pure-Python elimination on lists of fractions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_PRIME = 32003
CHECK_PRIME = 31991


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of a coefficient field descriptor."""

    characteristic: int = 0

    def __call__(self, x):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def neg(self, a):
        return self(-a)

    def mul(self, a, b):
        return self(a * b)

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)


class RationalField(Field):
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def spec(self) -> str:
        return "q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p <= 3:
            raise ValueError("prime fields must have p > 3")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def lift(self, a) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def spec(self) -> str:
        return f"gf:{self.p}"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``q``, ``gf:p`` or a bare prime."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("gf:"):
        s = s[3:]
    return GF(int(s))


# ---------------------------------------------------------------------------
# dense linear algebra


def as_matrix(M, field: Field):
    """Coerce a nested sequence / array to the canonical matrix type of ``field``."""
    if isinstance(field, PrimeField):
        if isinstance(M, np.ndarray) and M.dtype == np.int64:
            return M % field.p
        rows = [[field(x) for x in row] for row in M]
        if not rows:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(rows, dtype=np.int64).reshape(len(rows), -1)
    return [[field(x) for x in row] for row in M]


def _rref_mod(A: np.ndarray, p: int, reduced: bool = True):
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        if not reduced:
            col[:r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_generic(M: list[list], field: Field, reduced: bool = True):
    A = [list(row) for row in M]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = next((k for k in range(r, nrows) if A[k][c] != 0), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(x, inv) for x in A[r]]
        for k in range(nrows):
            if k == r or A[k][c] == 0 or (not reduced and k < r):
                continue
            f = A[k][c]
            A[k] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(M, field: Field):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``; zero rows dropped."""
    A = as_matrix(M, field)
    if isinstance(field, PrimeField):
        if A.size == 0:
            return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
        return _rref_mod(A, field.p)
    if not A:
        return [], []
    return _rref_generic(A, field)


def rank(M, field: Field) -> int:
    A = as_matrix(M, field)
    if isinstance(field, PrimeField):
        if A.size == 0:
            return 0
        # eliminate on the thinner side
        if A.shape[0] > A.shape[1]:
            A = A.T
        return len(_rref_mod(A, field.p, reduced=False)[1])
    if not A or not A[0]:
        return 0
    return len(_rref_generic(A, field, reduced=False)[1])


def nullspace(M, field: Field, ncols: int | None = None):
    """Basis of ``{v : M v = 0}`` as the rows of a matrix.

    Row ``k`` has a 1 in the k-th free column and 0 in every other free column,
    so the basis matrix (read column-wise) is in reduced column-echelon form.
    """
    A = as_matrix(M, field)
    if isinstance(field, PrimeField):
        n = A.shape[1] if A.ndim == 2 and A.size else (ncols if ncols is not None else A.shape[-1])
        if A.size == 0:
            return np.eye(n, dtype=np.int64)
        R, piv = _rref_mod(A, field.p)
        free = [c for c in range(n) if c not in set(piv)]
        N = np.zeros((len(free), n), dtype=np.int64)
        if free:
            N[np.arange(len(free)), free] = 1
            if piv:
                N[:, piv] = (-R[:, free].T) % field.p
        return N
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return [[field(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = _rref_generic(A, field)
    pset = set(piv)
    free = [c for c in range(n) if c not in pset]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, pc in zip(R, piv):
            v[pc] = field.neg(row[f])
        basis.append(v)
    return basis


def transpose(M):
    if isinstance(M, np.ndarray):
        return M.T.copy()
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B, field: Field):
    if isinstance(field, PrimeField):
        return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % field.p
    return [[field(sum(a * b for a, b in zip(row, col))) for col in zip(*B)] for row in A]


def solve_in_span(basis, v, field: Field) -> bool:
    """True iff ``v`` lies in the row span of ``basis``."""
    if len(basis) == 0:
        return all(x == 0 for x in v)
    r0 = rank(basis, field)
    stacked = np.vstack([basis, [v]]) if isinstance(field, PrimeField) else list(basis) + [list(v)]
    return rank(stacked, field) == r0
