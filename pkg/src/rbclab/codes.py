"""Linear codes given by generator matrices, and the reference constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .algebra import GF, Matrix, rank_of_vectors

DISTANCE_BUDGET = 2**24
MDS_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


@dataclass(frozen=True)
class LinearCode:
    """A linear code ``F^k -> F^n`` with encoding ``x -> xG``.

    ``k <= n`` and full rank are not enforced: the search module builds
    degenerate generators on purpose.
    """

    G: Matrix

    @property
    def field(self) -> GF:
        return self.G.field

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @classmethod
    def from_rows(cls, field: GF, rows, n: int | None = None) -> "LinearCode":
        if n is not None:
            return cls(Matrix(field, rows, (len(rows), n)))
        return cls(Matrix(field, rows))

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return encode(self, x)

    def __repr__(self):
        return f"LinearCode({self.field!r}, k={self.k}, n={self.n}, G={self.G.tolist()})"


def encode(code: LinearCode, x: Sequence[int]) -> tuple[int, ...]:
    F = code.field
    x = [F.check(v) for v in x]
    if len(x) != code.k:
        raise ValueError(f"message of length {len(x)} for a code with k={code.k}")
    c = np.zeros(code.n, dtype=np.int64)
    for i, xi in enumerate(x):
        if xi:
            c = F.add_table[c, F.mul_table[xi, code.G.data[i]]]
    return tuple(c.tolist())


def _codewords(code: LinearCode, start: int, stop: int) -> np.ndarray:
    """Codewords of messages ``start..stop-1`` (message index read base q, first digit = x_1)."""
    F = code.field
    idx = np.arange(start, stop)
    c = np.zeros((len(idx), code.n), dtype=np.int64)
    for i in range(code.k):
        xi = (idx // F.q ** (code.k - 1 - i)) % F.q
        c = F.add_table[c, F.mul_table[xi[:, None], code.G.data[i][None, :]]]
    return c


def min_distance(code: LinearCode, budget: int = DISTANCE_BUDGET) -> int:
    """Minimum Hamming weight of ``xG`` over all nonzero ``x``, by enumeration.

    For rank-deficient generators this can be 0.
    """
    if code.k == 0:
        raise ValueError("min_distance of a code with k = 0 is undefined")
    total = code.field.q ** code.k
    if total > budget:
        raise BudgetExceeded(f"too large for brute force: q^k = {total} > budget {budget}")
    best = code.n
    chunk = 1 << 16
    for start in range(1, total, chunk):
        cw = _codewords(code, start, min(total, start + chunk))
        best = min(best, int((cw != 0).sum(axis=1).min()))
        if best == 0:
            break
    return best


def construct_repetition(field: GF, k: int, d: int) -> LinearCode:
    """Each message symbol copied ``d + 1`` times; copies of ``e_1`` come first."""
    if k < 1 or d < 0:
        raise ValueError(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    G = np.kron(np.eye(k, dtype=np.int64), np.ones((1, d + 1), dtype=np.int64))
    return LinearCode(Matrix(field, G))


def construct_mds(field: GF, k: int, d: int) -> LinearCode:
    """Vandermonde (Reed-Solomon) generator on the points ``0, 1, ..., k+d-1``.

    Row ``i`` holds ``a_j ** i`` with ``0 ** 0 = 1``.
    """
    if k < 1 or d < 0:
        raise ValueError(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    n = k + d
    if field.q < n:
        raise ValueError(f"field too small for an MDS code of length {n}: need q >= {n}, have q = {field.q}")
    rows = [[field.pow(a, i) for a in range(n)] for i in range(k)]
    return LinearCode(Matrix(field, rows, (k, n)))


def construct_block_rs(field: GF, k: int, d: int, lam: int) -> LinearCode:
    """Block-diagonal code: ``k/lam`` contiguous blocks, each an MDS ``[lam + d, lam]`` code."""
    if lam < 1 or k % lam:
        raise ValueError(f"block size {lam} must divide k = {k}")
    block = construct_mds(field, lam, d).G.data
    blocks = k // lam
    G = np.kron(np.eye(blocks, dtype=np.int64), block)
    return LinearCode(Matrix(field, G, (k, blocks * (lam + d))))


def is_mds(code: LinearCode, budget: int = MDS_BUDGET) -> bool:
    """True iff every ``k x k`` column submatrix of ``G`` is invertible."""
    k, n = code.k, code.n
    if n < k:
        return False
    if comb(n, k) > budget:
        raise BudgetExceeded(f"too large for brute force: C({n},{k}) = {comb(n, k)} > budget {budget}")
    cols = code.G.columns()
    for J in combinations(range(n), k):
        if rank_of_vectors(code.field, [cols[j] for j in J]) < k:
            return False
    return True
