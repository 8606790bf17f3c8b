"""Shrinking reduction for ``(r, r, d)`` robust batch codes.

One step picks a message row ``i`` whose unit vector ``e_i`` appears (up to
scaling) in at most ``d`` columns, deletes row ``i`` together with every
column touching it, and pads with zero columns so the new block length is
exactly ``n - (d+1) - (k-r)``.  Iterating ``k - r`` times and comparing the
final length with ``r + d`` replays the counting argument behind
:func:`rbclab.bound.theorem_bound`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Matrix
from .codes import LinearCode
from .rbc import RbcParams, verify_rbc


class ShrinkError(ValueError):
    """The input does not satisfy the reduction's hypotheses."""


@dataclass(frozen=True)
class ShrinkStep:
    i: int
    T_i: tuple[int, ...]
    S_i: tuple[int, ...]
    k_before: int
    k_after: int
    n_before: int
    n_after: int
    pad_count: int
    degenerate: bool

    def render(self, lam: int) -> str:
        S = "{" + ",".join(str(j + 1) for j in self.S_i) + "}"
        return (f"step {lam}: i={self.i + 1}, |T_i|={len(self.T_i)}, S_i={S}, "
                f"n: {self.n_before}→{self.n_after}, pad={self.pad_count}")


@dataclass
class ShrinkTrace:
    r: int
    d: int
    steps: list[ShrinkStep] = field(default_factory=list)
    n_sequence: list[int] = field(default_factory=list)
    singleton_check: bool | None = None
    degenerate: bool = False
    trivial: bool = False  # n >= k(d+1): nothing to reduce
    final: LinearCode | None = None

    def render(self) -> str:
        lines = []
        if self.trivial:
            lines.append(f"n = {self.n_sequence[0]} >= k(d+1): repetition bound holds, no steps")
        lines += [s.render(lam) for lam, s in enumerate(self.steps)]
        lines.append("n_sequence: " + ", ".join(str(x) for x in self.n_sequence))
        if self.singleton_check is not None:
            n_last = self.n_sequence[-1]
            verdict = "holds" if self.singleton_check else "FAILS"
            lines.append(f"singleton: n_final={n_last} >= r+d={self.r + self.d}: {verdict}")
        if self.degenerate:
            lines.append("degenerate: message length dropped below r")
        return "\n".join(lines) + "\n"


def closed_form_n(n: int, k: int, r: int, d: int, lam: int) -> Fraction:
    """``n - lam(d+1) - lam(k - r - (lam-1)/2)``."""
    return n - lam * (d + 1) - lam * (k - r - Fraction(lam - 1, 2))


def _unit_multiple_of(col, i) -> bool:
    return col[i] != 0 and all(x == 0 for t, x in enumerate(col) if t != i)


def shrink_once(code: LinearCode, params: RbcParams) -> tuple[LinearCode, ShrinkStep]:
    r, d = params.r, params.d
    if params.m != r:
        raise ValueError(f"shrinking applies to m == r, got {params}")
    k, n = code.k, code.n
    if k < 1:
        raise ShrinkError("message length is already 0")
    if n >= k * (d + 1):
        raise ShrinkError(f"precondition n < k(d+1) fails: n={n}, k(d+1)={k * (d + 1)}")
    cols = code.G.columns()
    for i in range(k):
        T = tuple(j for j, c in enumerate(cols) if _unit_multiple_of(c, i))
        if len(T) <= d:
            break
    else:  # pragma: no cover - pigeonhole: sum |T_i| <= n < k(d+1)
        raise AssertionError("no row with |T_i| <= d despite n < k(d+1)")
    S = tuple(j for j, c in enumerate(cols) if c[i] != 0)
    need = d + 1 + k - r
    if len(S) < need:
        raise ShrinkError(
            f"input violates the |S_i| >= d + 1 + k - r claim (row {i + 1}: |S_i|={len(S)} < {need}), "
            f"hence is not a valid {params}-robust batch code"
        )
    pad = len(S) - need
    keep_rows = [t for t in range(k) if t != i]
    keep_cols = [j for j in range(n) if j not in set(S)]
    core = code.G.data[np.ix_(keep_rows, keep_cols)].reshape(k - 1, len(keep_cols))
    G2 = np.hstack([core, np.zeros((k - 1, pad), dtype=np.int64)])
    n_after = n - need
    assert G2.shape[1] == n_after
    step = ShrinkStep(i=i, T_i=T, S_i=S, k_before=k, k_after=k - 1, n_before=n,
                      n_after=n_after, pad_count=pad, degenerate=k - 1 < r)
    return LinearCode(Matrix(code.field, G2, (k - 1, n_after))), step


def shrink_chain(code: LinearCode, params: RbcParams, verify_each: bool = False) -> ShrinkTrace:
    """Apply :func:`shrink_once` ``k - r`` times and test ``n_final >= r + d``."""
    r, d = params.r, params.d
    trace = ShrinkTrace(r=r, d=d, n_sequence=[code.n], final=code)
    if code.n >= code.k * (d + 1):
        trace.trivial = True
        return trace
    if verify_each and code.k >= r:
        _require_rbc(code, params, 0)
    cur = code
    for lam in range(max(0, code.k - r)):
        cur, step = shrink_once(cur, params)
        trace.steps.append(step)
        trace.n_sequence.append(cur.n)
        if step.degenerate:
            trace.degenerate = True
            break
        if verify_each:
            _require_rbc(cur, params, lam + 1)
    trace.final = cur
    trace.singleton_check = cur.n >= r + d
    return trace


def _require_rbc(code: LinearCode, params: RbcParams, lam: int):
    report = verify_rbc(code, params, "lemma1", keep_witnesses=False)
    if not report.holds:
        I, D = report.counterexample
        raise ShrinkError(
            f"code after {lam} step(s) is not a {params}-robust batch code: "
            f"no repair set for I={[x + 1 for x in I]}, D={[x + 1 for x in D]}"
        )
