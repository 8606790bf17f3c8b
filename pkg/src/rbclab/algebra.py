"""Exact arithmetic in small finite fields GF(p^e) and dense matrices over them.

Field elements are plain ints in ``[0, q)``.  For ``e > 1`` the integer is read
base ``p`` as the coefficient vector of a polynomial (digit ``i`` is the
coefficient of ``x**i``) reduced modulo a fixed irreducible polynomial.

All fields have ``q <= 256`` so full addition/multiplication tables are built
once at construction; every inner loop is a table lookup.

Indices are 0-based throughout the Python API.  The text formats and reports
render them 1-based.
"""

from __future__ import annotations

import io
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 256


class FieldError(ValueError):
    """Invalid field parameters or operands."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"field order must be >= 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not _is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, e


# polynomials over GF(p) below are coefficient lists, lowest degree first

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(poly_high_first: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    coeffs = [c % p for c in reversed(poly_high_first)]
    e = len(coeffs) - 1
    if e < 1 or coeffs[-1] != 1:
        return False
    for deg in range(1, e // 2 + 1):
        for low in product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not _poly_mod(coeffs, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_polynomial(p: int, e: int) -> tuple[int, ...]:
    """Fixed reduction polynomial for GF(p^e), highest coefficient first.

    The choice is the monic irreducible polynomial of degree ``e`` whose
    lower coefficients, read as a base-``p`` number, are smallest.  For
    ``GF(4)`` this is ``x^2 + x + 1``.
    """
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if low[0] == 0:
            continue
        poly = tuple([1] + low[::-1])
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


class GF:
    """The finite field GF(p^e) with q = p^e <= 256.

    >>> F = GF(5)
    >>> F.add(3, 4), F.inv(2)
    (2, 3)
    >>> GF(4).mul(2, 2)      # x * x = x + 1 mod x^2 + x + 1
    3

    ``GF(q)`` takes a prime power; ``GF(p, e, poly)`` spells it out.
    """

    def __init__(self, p: int, e: int | None = None, poly: Sequence[int] | None = None):
        if e is None:
            p, e = prime_power(p)
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
        if e == 1:
            poly = None
        elif poly is None:
            poly = default_polynomial(p, e)
        else:
            poly = tuple(int(c) % p for c in poly)
            if len(poly) != e + 1 or poly[0] != 1:
                raise FieldError(f"reduction polynomial must be monic of degree {e}")
            if not is_irreducible(poly, p):
                raise FieldError(f"polynomial {poly} is reducible over GF({p})")
        self.p, self.e, self.q = p, e, q
        self.poly = poly
        self._build_tables()

    @classmethod
    def from_order(cls, q: int, poly: Sequence[int] | None = None) -> "GF":
        p, e = prime_power(q)
        return cls(p, e, poly)

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        if e == 1:
            r = np.arange(q)
            add = (r[:, None] + r[None, :]) % p
            mul = (r[:, None] * r[None, :]) % p
        else:
            place = p ** np.arange(e)
            digits = (np.arange(q)[:, None] // place) % p  # (q, e)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ place
            # a * x^j for every a and j, reduced mod poly
            low = np.array(self.poly[::-1][:e])  # x^e == -low
            shifts = np.empty((q, e, e), dtype=np.int64)
            cur = digits.copy()
            for j in range(e):
                shifts[:, j, :] = cur
                top = cur[:, -1:].copy()
                cur = np.concatenate([np.zeros((q, 1), dtype=np.int64), cur[:, :-1]], axis=1)
                cur = (cur - top * low[None, :]) % p
            prod_digits = np.einsum("bj,ajt->abt", digits, shifts) % p
            mul = prod_digits @ place
        neg = (-np.arange(q)) % q if e == 1 else np.argmax(add == 0, axis=1)
        inv = np.argmax(mul == 1, axis=1)
        inv[0] = 0
        self.add_table = _frozen(add)
        self.mul_table = _frozen(mul)
        self.neg_table = _frozen(neg)
        self.inv_table = _frozen(inv)
        # list mirrors for scalar hot loops
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e, self.poly) == (other.p, other.e, other.poly)

    def __hash__(self):
        return hash((self.p, self.e, self.poly))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, poly={list(self.poly)})"

    def __reduce__(self):
        return (GF, (self.p, self.e, self.poly))

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return self._add[self.check(a)][self.check(b)]

    def sub(self, a: int, b: int) -> int:
        return self._add[self.check(a)][self._neg[self.check(b)]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[self.check(a)][self.check(b)]

    def neg(self, a: int) -> int:
        return self._neg[self.check(a)]

    def inv(self, a: int) -> int:
        if self.check(a) == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        self.check(a)
        out = 1
        for _ in range(k):
            out = self._mul[out][a]
        return out


_OPS = {"add": 2, "sub": 2, "mul": 2, "inv": 1, "neg": 1}


def field_arith(field: GF, op: str, a: int, b: int | None = None) -> int:
    """Dispatch one of add/sub/mul/inv/neg by name."""
    if op not in _OPS:
        raise ValueError(f"unknown field operation {op!r}")
    if _OPS[op] == 2:
        if b is None:
            raise ValueError(f"{op} needs two operands")
        return getattr(field, op)(a, b)
    return getattr(field, op)(a)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# linear algebra on plain int sequences; shared by Matrix and the hot loops in
# rbc/search.

def echelon_basis(field: GF, vectors: Iterable[Sequence[int]]) -> list[tuple[int, list[int]]]:
    """Echelon basis of the span of ``vectors`` as ``(pivot, vector)`` pairs.

    Each basis vector is scaled so its pivot entry is 1 and is zero at the
    pivots of all earlier basis vectors.  Pivot = first nonzero entry.
    """
    add, mul, neg, inv = field._add, field._mul, field._neg, field._inv
    basis: list[tuple[int, list[int]]] = []
    for v in vectors:
        v = list(v)
        for piv, b in basis:
            c = v[piv]
            if c:
                f = mul[neg[c]]
                v = [add[x][f[y]] for x, y in zip(v, b)]
        for piv, x in enumerate(v):
            if x:
                s = mul[inv[x]]
                basis.append((piv, [s[y] for y in v]))
                break
    return basis


def reduce_vector(field: GF, basis: list[tuple[int, list[int]]], v: Sequence[int]) -> list[int]:
    """Residual of ``v`` after elimination against an echelon basis."""
    add, mul, neg = field._add, field._mul, field._neg
    v = list(v)
    for piv, b in basis:
        c = v[piv]
        if c:
            f = mul[neg[c]]
            v = [add[x][f[y]] for x, y in zip(v, b)]
    return v


def rank_of_vectors(field: GF, vectors: Iterable[Sequence[int]]) -> int:
    if field.q == 2:
        return _rank_gf2(vectors)
    return len(echelon_basis(field, vectors))


def _rank_gf2(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        x = 0
        for bit in v:
            x = (x << 1) | bit
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    return len(basis)


def index_set(idx: Iterable[int], bound: int, what: str = "index") -> tuple[int, ...]:
    """Normalize an index collection to a sorted tuple of distinct ints in range."""
    out = sorted({int(i) for i in idx})
    if out and (out[0] < 0 or out[-1] >= bound):
        raise IndexError(f"{what} set {out} out of range [0, {bound})")
    return tuple(out)


class Matrix:
    """Immutable dense matrix over a :class:`GF`.

    ``data`` is a read-only ``int64`` numpy array of canonical encodings.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: GF, entries, shape: tuple[int, int] | None = None):
        data = np.array(entries, dtype=np.int64)
        if shape is not None:
            data = data.reshape(shape)
        if data.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= field.q):
            raise FieldError(f"matrix entries not in {field!r}")
        data.setflags(write=False)
        self.field = field
        self.data = data

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, size: int) -> "Matrix":
        return cls(field, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, key):
        return self.data[key]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[:, j].tolist())

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in self.data.T.tolist()]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T)

    def hstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, np.hstack([self.data, other.data]), (self.rows, self.cols + other.cols))

    def restrict(self, I: Iterable[int], J: Iterable[int]) -> "Matrix":
        I = index_set(I, self.rows, "row")
        J = index_set(J, self.cols, "column")
        return Matrix(self.field, self.data[np.ix_(I, J)], (len(I), len(J)))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return rank_of_vectors(self.field, self.data.tolist())

    def in_colspace(self, v: Sequence[int]) -> bool:
        v = [self.field.check(x) for x in np.asarray(v).ravel().tolist()]
        if len(v) != self.rows:
            raise ValueError(f"vector of length {len(v)} vs matrix with {self.rows} rows")
        basis = echelon_basis(self.field, self.columns())
        return not any(reduce_vector(self.field, basis, v))

    def is_zero(self) -> bool:
        return not self.data.any()


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field!r} vs {b.field!r}")


def restrict(M: Matrix, I: Iterable[int], J: Iterable[int]) -> Matrix:
    return M.restrict(I, J)


def rank(M: Matrix) -> int:
    return M.rank()


def in_colspace(M: Matrix, v: Sequence[int]) -> bool:
    return M.in_colspace(v)


# ---------------------------------------------------------------------------
# matrix text format
#
#   q k n
#   poly c_e ... c_0        (only for e > 1; optional, default polynomial otherwise)
#   k lines of n integers
#
# blank lines and lines starting with '#' are ignored.

def format_matrix(M: Matrix) -> str:
    F = M.field
    out = io.StringIO()
    out.write(f"{F.q} {M.rows} {M.cols}\n")
    if F.e > 1:
        out.write("poly " + " ".join(str(c) for c in F.poly) + "\n")
    for row in M.data.tolist():
        out.write(" ".join(str(x) for x in row) + "\n")
    return out.getvalue()


def parse_matrix(text: str) -> Matrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines.pop(0).split()
    if len(head) != 3:
        raise ValueError(f"header must be 'q k n', got {' '.join(head)!r}")
    q, k, n = (int(t) for t in head)
    poly = None
    if lines and lines[0].split()[0] == "poly":
        poly = [int(t) for t in lines.pop(0).split()[1:]]
    field = GF.from_order(q, poly)
    if len(lines) != k:
        raise ValueError(f"expected {k} matrix rows, got {len(lines)}")
    rows = []
    for ln in lines:
        row = [int(t) for t in ln.split()]
        if len(row) != n:
            raise ValueError(f"expected {n} entries per row, got {len(row)}")
        rows.append(row)
    return Matrix(field, rows, (k, n))


def read_matrix(path) -> Matrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(M: Matrix, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(format_matrix(M))
