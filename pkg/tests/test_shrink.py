import numpy as np
import pytest

from rbclab.algebra import GF, Matrix
from rbclab.codes import LinearCode, construct_mds, construct_repetition
from rbclab.rbc import RbcParams, verify_rbc
from rbclab.search import enumerate_rbcs
from rbclab.shrink import ShrinkError, closed_form_n, shrink_chain, shrink_once

F2 = GF(2)
PARITY = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]]
# passes the per-step checks but is not a (2,2,1) code; k=3, n=5 sits below the bound
HYPOTHETICAL = [[1, 1, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1]]


def code_of(rows, q=2):
    return LinearCode.from_rows(GF(q), rows)


def test_shrink_once_parity_example():
    out, step = shrink_once(code_of(PARITY), RbcParams(3, 3, 1))
    assert (step.i, step.T_i, step.S_i) == (0, (0,), (0, 3))
    assert out.G.tolist() == [[1, 0], [0, 1]]
    assert (step.n_after, step.pad_count, step.k_after) == (2, 0, 2)
    assert step.degenerate


def test_shrink_once_precondition():
    with pytest.raises(ShrinkError, match="n < k\\(d\\+1\\)"):
        shrink_once(construct_repetition(F2, 2, 1), RbcParams(2, 2, 1))


def test_shrink_once_small_example():
    out, step = shrink_once(code_of([[1, 0, 1], [0, 1, 1]]), RbcParams(2, 2, 1))
    assert (step.i, step.T_i, step.S_i) == (0, (0,), (0, 2))
    assert len(step.S_i) == 1 + 1 + 2 - 2
    assert out.G.tolist() == [[1]] and out.n == 1
    assert step.degenerate


def test_claim_violation_is_reported():
    # row 1 touches only columns {1, 2}; the claim needs 1 + 1 + 3 - 1 = 4 of them
    code = code_of([[1, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]])
    with pytest.raises(ShrinkError, match="not a valid"):
        shrink_once(code, RbcParams(1, 1, 1))


def test_padding_and_accounting():
    # |S_1| = 5 > d + 1 + k - r = 4, so one zero column is appended
    code = code_of([[1, 1, 1, 1, 1], [0, 1, 1, 0, 0], [0, 0, 0, 1, 1]])
    out, step = shrink_once(code, RbcParams(1, 1, 1))
    assert step.S_i == (0, 1, 2, 3, 4)
    assert step.T_i == (0,)
    assert step.pad_count == 1 and step.n_after == 5 - 4
    core = code.G.restrict([1, 2], [j for j in range(5) if j not in step.S_i])
    assert core.cols == 0 and out.G == Matrix.zeros(F2, 2, 1)


def test_chain_zero_steps_when_r_equals_k():
    trace = shrink_chain(code_of(PARITY), RbcParams(3, 3, 1))
    assert trace.steps == [] and trace.n_sequence == [4]
    assert trace.singleton_check is True
    mds = construct_mds(GF(5), 2, 2)
    assert shrink_chain(mds, RbcParams(2, 2, 2)).singleton_check is True


def test_chain_trivial_branch():
    trace = shrink_chain(construct_repetition(F2, 3, 1), RbcParams(2, 2, 1))
    assert trace.trivial and trace.singleton_check is None
    assert "no steps" in trace.render()


def test_chain_exhibits_contradiction():
    trace = shrink_chain(code_of(HYPOTHETICAL), RbcParams(2, 2, 1))
    assert trace.n_sequence == [5, 2]
    assert trace.singleton_check is False
    assert not verify_rbc(code_of(HYPOTHETICAL), RbcParams(2, 2, 1)).holds
    with pytest.raises(ShrinkError):
        shrink_chain(code_of(HYPOTHETICAL), RbcParams(2, 2, 1), verify_each=True)


def test_render_format():
    trace = shrink_chain(code_of(HYPOTHETICAL), RbcParams(2, 2, 1))
    lines = trace.render().splitlines()
    assert lines[0] == "step 0: i=1, |T_i|=1, S_i={1,2,3}, n: 5→2, pad=0"
    assert lines[1] == "n_sequence: 5, 2"
    assert lines[2] == "singleton: n_final=2 >= r+d=3: FAILS"


def _found_codes():
    return list(enumerate_rbcs(F2, 4, 7, RbcParams(3, 3, 1)))


def test_preservation_on_found_codes():
    params = RbcParams(3, 3, 1)
    codes = _found_codes()
    assert codes
    for code in codes:
        out, step = shrink_once(code, params)
        assert out.k == 3 and out.n == 7 - 2 - 1
        assert verify_rbc(out, params, "naive").holds
        trace = shrink_chain(code, params, verify_each=True)
        assert trace.singleton_check
        for lam, n_lam in enumerate(trace.n_sequence):
            assert n_lam == closed_form_n(code.n, code.k, 3, 1, lam)


def test_n_sequence_closed_form_on_chains():
    # the recursion holds for any chain that runs, verified code or not
    rng = np.random.default_rng(12)
    seen = 0
    for _ in range(3000):
        k, n, d = int(rng.integers(2, 6)), int(rng.integers(3, 12)), int(rng.integers(0, 3))
        r = int(rng.integers(1, k))
        code = LinearCode(Matrix(F2, rng.integers(0, 2, (k, n))))
        try:
            trace = shrink_chain(code, RbcParams(r, r, d))
        except ShrinkError:
            continue
        for lam, n_lam in enumerate(trace.n_sequence):
            assert n_lam == closed_form_n(n, k, r, d, lam)
        seen += len(trace.steps)
    assert seen > 50


@pytest.mark.parametrize("q", [2, 3])
def test_never_certifies_non_codes(q):
    rng = np.random.default_rng(13 + q)
    F = GF(q)
    tried = 0
    for _ in range(4000):
        k, n, d = int(rng.integers(2, 5)), int(rng.integers(2, 8)), int(rng.integers(0, 3))
        r = int(rng.integers(1, k))
        if n >= k * (d + 1) or d > n:
            continue
        code = LinearCode(Matrix(F, rng.integers(0, q, (k, n))))
        params = RbcParams(r, r, d)
        if verify_rbc(code, params, "lemma1", keep_witnesses=False).holds:
            continue
        try:
            out, step = shrink_once(code, params)
        except ShrinkError:
            continue
        tried += 1
        if out.n >= d:
            assert not verify_rbc(out, params, "lemma1", keep_witnesses=False).holds
    assert tried > 50


def test_removed_column_accounting_random():
    rng = np.random.default_rng(21)
    checked = 0
    for _ in range(2000):
        k, n, d = int(rng.integers(2, 5)), int(rng.integers(3, 10)), int(rng.integers(0, 3))
        r = int(rng.integers(1, k))
        code = LinearCode(Matrix(GF(3), rng.integers(0, 3, (k, n))))
        try:
            out, step = shrink_once(code, RbcParams(r, r, d))
        except ShrinkError:
            continue
        rows = [t for t in range(k) if t != step.i]
        cols = [j for j in range(n) if j not in step.S_i]
        core = code.G.restrict(rows, cols)
        assert out.G.data[:, :core.cols].tolist() == core.tolist()
        assert out.G.data.shape == (k - 1, core.cols + step.pad_count)
        assert not out.G.data[:, core.cols:].any()
        assert step.n_after == n - (d + 1) - (k - r) and len(step.T_i) <= d
        assert set(step.T_i) <= set(step.S_i)
        checked += 1
    assert checked > 50
