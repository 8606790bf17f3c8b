import itertools

import numpy as np
import pytest

from rbclab.algebra import GF, Matrix
from rbclab.codes import (
    BudgetExceeded,
    LinearCode,
    construct_block_rs,
    construct_mds,
    construct_repetition,
    encode,
    is_mds,
    min_distance,
)

PARITY = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]]


def _weight_oracle(code):
    """Minimum weight by scalar enumeration, independent of the vectorized path."""
    F = code.field
    best = None
    for x in itertools.product(range(F.q), repeat=code.k):
        if not any(x):
            continue
        w = sum(1 for c in encode(code, x) if c)
        best = w if best is None else min(best, w)
    return best


def test_encode_examples():
    F = GF(5)
    ident = LinearCode(Matrix.identity(F, 3))
    assert encode(ident, [4, 0, 2]) == (4, 0, 2)
    code = LinearCode.from_rows(F, [[1, 1, 1, 1], [0, 1, 2, 3]])
    assert encode(code, [0, 0]) == (0, 0, 0, 0)
    assert encode(code, [1, 1]) == (1, 2, 3, 4)
    with pytest.raises(ValueError):
        encode(code, [1])


def test_encode_linear():
    rng = np.random.default_rng(3)
    for q in (2, 3, 4, 5):
        F = GF(q)
        for _ in range(50):
            k, n = int(rng.integers(1, 5)), int(rng.integers(1, 7))
            code = LinearCode(Matrix(F, rng.integers(0, q, (k, n))))
            x, y = rng.integers(0, q, k).tolist(), rng.integers(0, q, k).tolist()
            s = [F.add(a, b) for a, b in zip(x, y)]
            assert encode(code, s) == tuple(F.add(a, b) for a, b in zip(encode(code, x), encode(code, y)))


def test_min_distance_examples():
    F = GF(2)
    assert min_distance(construct_repetition(F, 2, 1)) == 2
    assert min_distance(LinearCode.from_rows(F, PARITY)) == 2
    assert min_distance(LinearCode(Matrix.identity(F, 3))) == 1


def test_min_distance_matches_oracle():
    rng = np.random.default_rng(5)
    for q in (2, 3, 4):
        F = GF(q)
        for _ in range(40):
            k, n = int(rng.integers(1, 4)), int(rng.integers(1, 7))
            code = LinearCode(Matrix(F, rng.integers(0, q, (k, n))))
            assert min_distance(code) == _weight_oracle(code)


def test_min_distance_rank_deficient_is_zero():
    code = LinearCode.from_rows(GF(2), [[1, 1], [1, 1]])
    assert min_distance(code) == 0


def test_min_distance_budget():
    code = construct_repetition(GF(2), 10, 0)
    with pytest.raises(BudgetExceeded, match="too large for brute force"):
        min_distance(code, budget=512)


def test_repetition_examples():
    F = GF(2)
    assert construct_repetition(F, 1, 0).G.tolist() == [[1]]
    assert construct_repetition(F, 2, 1).G.tolist() == [[1, 1, 0, 0], [0, 0, 1, 1]]
    assert construct_repetition(F, 3, 2).n == 9


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("d", range(0, 4))
def test_repetition_layout_and_distance(k, d):
    code = construct_repetition(GF(3), k, d)
    assert code.n == k * (d + 1)
    cols = code.G.columns()
    for i in range(k):
        e = tuple(int(t == i) for t in range(k))
        assert cols[i * (d + 1):(i + 1) * (d + 1)] == [e] * (d + 1)
    assert code.G.rank() == k
    assert min_distance(code) == d + 1


def test_mds_examples():
    assert construct_mds(GF(3), 1, 0).G.tolist() == [[1]]
    assert construct_mds(GF(5), 2, 2).G.tolist() == [[1, 1, 1, 1], [0, 1, 2, 3]]
    with pytest.raises(ValueError, match="need q >= 4"):
        construct_mds(GF(2), 2, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_mds_sweep(q):
    F = GF(q)
    for k in range(1, q + 1):
        for d in range(0, q - k + 1):
            if k * d > 40:
                continue  # keeps C(n,k) and q^k small
            code = construct_mds(F, k, d)
            assert code.n == k + d
            assert is_mds(code)
            if q**k <= 2**16:
                assert min_distance(code) == d + 1


def test_block_rs_examples():
    F = GF(5)
    code = construct_block_rs(F, 4, 2, 2)
    block = [[1, 1, 1, 1], [0, 1, 2, 3]]
    z = [0, 0, 0, 0]
    assert code.n == 8
    assert code.G.tolist() == [b + z for b in block] + [z + b for b in block]
    assert construct_block_rs(F, 3, 2, 1).G == construct_repetition(F, 3, 2).G
    assert construct_block_rs(F, 3, 2, 3).G == construct_mds(F, 3, 2).G
    with pytest.raises(ValueError):
        construct_block_rs(F, 4, 2, 3)
    with pytest.raises(ValueError):
        construct_block_rs(GF(2), 4, 2, 2)


def test_block_rs_length_formula():
    F = GF(7)
    for k, d, lam in [(4, 2, 2), (6, 3, 3), (6, 4, 2), (6, 3, 2)]:
        code = construct_block_rs(F, k, d, lam)
        assert code.n == (k // lam) * (lam + d)
        if d % lam == 0:
            assert code.n == k * (d // lam + 1)


def test_is_mds_examples():
    assert not is_mds(construct_repetition(GF(2), 2, 1))
    assert is_mds(LinearCode.from_rows(GF(2), PARITY))
    with pytest.raises(BudgetExceeded):
        is_mds(construct_repetition(GF(2), 6, 3), budget=100)


def test_rate():
    assert construct_repetition(GF(2), 3, 1).rate == pytest.approx(0.5)
