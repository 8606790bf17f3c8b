"""Existence search for robust batch codes at small parameters.

Exhaustive mode enumerates generator matrices up to column permutation and
nonzero column scaling, both of which preserve the robust batch property.
Every column is replaced by a class representative (zero, or first nonzero
entry equal to 1) and only nondecreasing sequences of classes are visited,
so each equivalence class of matrices is seen exactly once.  Row operations
are *not* quotiented out: the property talks about fixed message positions.

Claims are per field.  Finding nothing over GF(2) says nothing about GF(4).
"""

from __future__ import annotations

import enum
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb

import numpy as np

from .algebra import GF, Matrix, rank_of_vectors
from .codes import LinearCode
from .rbc import RbcParams, verify_rbc

SEARCH_BUDGET = 2**28


class Status(str, enum.Enum):
    FOUND = "Found"
    EXHAUSTED_NONE = "ExhaustedNone"
    INCONCLUSIVE = "Inconclusive"


class SearchError(RuntimeError):
    pass


@dataclass
class SearchOutcome:
    status: Status
    field: GF
    k: int
    n: int
    params: RbcParams
    mode: str
    witness: LinearCode | None = None
    matrices_enumerated: int = 0
    matrices_after_pruning: int = 0
    wall_budget_used: float = 0.0

    def render(self) -> str:
        from .algebra import format_matrix

        lines = [
            f"status: {self.status.value}",
            f"field: GF({self.field.q})",
            f"k={self.k} n={self.n} (r,m,d)={self.params}",
            f"mode: {self.mode}",
            f"matrices_enumerated: {self.matrices_enumerated}",
            f"matrices_after_pruning: {self.matrices_after_pruning}",
            f"seconds: {self.wall_budget_used:.3f}",
        ]
        out = "\n".join(lines) + "\n"
        if self.witness is not None:
            out += "witness:\n" + format_matrix(self.witness.G)
        return out


def column_classes(field: GF, k: int) -> list[tuple[int, ...]]:
    """Representatives of columns up to nonzero scaling, in canonical order.

    Order is by support (as a sorted index tuple), then by the vector itself;
    the zero column comes first.
    """
    reps = [v for v in product(range(field.q), repeat=k)
            if not any(v) or next(x for x in v if x) == 1]
    return sorted(reps, key=lambda v: (tuple(i for i, x in enumerate(v) if x), v))


def canonical_count(field: GF, k: int, n: int) -> int:
    c = 1 + (field.q**k - 1) // (field.q - 1)
    return comb(c + n - 1, n)


def canonical_form(code: LinearCode) -> LinearCode:
    """Scale each column to its class representative and sort columns canonically."""
    F = code.field
    order = {v: idx for idx, v in enumerate(column_classes(F, code.k))}
    reps = []
    for col in code.G.columns():
        lead = next((x for x in col if x), 0)
        s = F.inv(lead) if lead else 0
        reps.append(tuple(F._mul[s][x] for x in col) if lead else col)
    reps.sort(key=order.__getitem__)
    return LinearCode(Matrix(F, np.array(reps, dtype=np.int64).T.reshape(code.k, code.n)))


@lru_cache(maxsize=1 << 18)
def _robust_span(field: GF, vecs: tuple, r: int, d: int) -> bool:
    """Whether the vectors still span F^r after deleting any d of them."""
    if len(vecs) < r + d:
        return False
    if rank_of_vectors(field, vecs) < r:
        return False
    for gone in combinations(range(len(vecs)), d):
        rest = [v for j, v in enumerate(vecs) if j not in gone]
        if rank_of_vectors(field, rest) < r:
            return False
    return True


class _Tester:
    """Fast acceptance test for sequences of column-class indices."""

    def __init__(self, field: GF, k: int, params: RbcParams):
        self.field, self.k, self.params = field, k, params
        self.classes = column_classes(field, k)
        self.rowsupp = [tuple(i for i in range(k) if v[i]) for v in self.classes]
        self.Is = list(combinations(range(k), params.r))
        # restricted[I][c]: class c restricted to rows I if its support lies in I
        self.restricted = []
        for I in self.Is:
            Iset = set(I)
            row = []
            for v, supp in zip(self.classes, self.rowsupp):
                row.append(tuple(v[i] for i in I) if supp and set(supp) <= Iset else None)
            self.restricted.append(row)

    def prune(self, idx) -> bool:
        """Necessary condition: every row has more than d nonzero columns."""
        counts = [0] * self.k
        for c in idx:
            for i in self.rowsupp[c]:
                counts[i] += 1
        return min(counts) > self.params.d

    def accepts(self, idx) -> bool:
        p = self.params
        if p.m != p.r:
            code = self.code(idx)
            return verify_rbc(code, p, "naive", keep_witnesses=False).holds
        for row in self.restricted:
            vecs = tuple(sorted(row[c] for c in idx if row[c] is not None))
            if not _robust_span(self.field, vecs, p.r, p.d):
                return False
        return True

    def code(self, idx) -> LinearCode:
        cols = [self.classes[c] for c in idx]
        G = np.array(cols, dtype=np.int64).T.reshape(self.k, len(idx))
        return LinearCode(Matrix(self.field, G))


def _scan(field, k, n, params, firsts, stop_at_first=True):
    """Scan canonical candidates whose first class lies in ``firsts``."""
    t = _Tester(field, k, params)
    C = len(t.classes)
    enumerated = pruned_in = 0
    hits = []
    for f in firsts:
        for rest in combinations_with_replacement(range(f, C), n - 1):
            idx = (f,) + rest
            enumerated += 1
            if not t.prune(idx):
                continue
            pruned_in += 1
            if t.accepts(idx):
                hits.append(idx)
                if stop_at_first:
                    return hits, enumerated, pruned_in
    return hits, enumerated, pruned_in


def _check_args(field, k, n, params):
    if k < params.r:
        raise ValueError(f"r = {params.r} exceeds k = {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def exists_rbc(
    field: GF,
    k: int,
    n: int,
    params: RbcParams,
    mode: str = "exhaustive",
    *,
    seed: int | None = None,
    samples: int = 0,
    budget: int = SEARCH_BUDGET,
    workers: int = 1,
    cache: "SearchCache | None" = None,
) -> SearchOutcome:
    """Search for a ``k x n`` generator over ``field`` with the given property.

    ``mode`` is ``"exhaustive"`` or ``"random"`` (which needs ``seed``).
    Random search never reports ExhaustedNone.
    """
    _check_args(field, k, n, params)
    if mode == "random":
        if seed is None:
            raise ValueError("random mode needs an explicit seed")
        tag = f"random:{seed}:{samples}"
    elif mode == "exhaustive":
        tag = "exhaustive"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    key = (field.q, k, n, params.r, params.m, params.d, tag)
    if cache is not None:
        hit = cache.get(key, field, params)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    out = SearchOutcome(Status.INCONCLUSIVE, field, k, n, params, tag)
    if mode == "exhaustive":
        _exhaustive(out, budget, workers)
    else:
        _random(out, seed, samples)
    if out.witness is not None:
        confirm = verify_rbc(out.witness, params, "naive", keep_witnesses=False)
        if not confirm.holds:  # pragma: no cover
            raise SearchError(f"fast filter accepted a non-code: {out.witness!r}")
    out.wall_budget_used = time.perf_counter() - t0
    if cache is not None:
        cache.put(key, out)
    return out


def _exhaustive(out: SearchOutcome, budget: int, workers: int):
    field, k, n, params = out.field, out.k, out.n, out.params
    total = canonical_count(field, k, n)
    if total > budget:
        return
    C = len(column_classes(field, k))
    if workers <= 1:
        parts = [_scan(field, k, n, params, range(C))]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_scan, field, k, n, params, [f]) for f in range(C)]
            parts = [f.result() for f in futs]
    t = _Tester(field, k, params)
    for hits, enumerated, pruned_in in parts:
        out.matrices_enumerated += enumerated
        out.matrices_after_pruning += pruned_in
        if hits:
            out.status = Status.FOUND
            out.witness = t.code(hits[0])
            return
    out.status = Status.EXHAUSTED_NONE


def _random(out: SearchOutcome, seed: int, samples: int):
    field, k, n, params = out.field, out.k, out.n, out.params
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        G = rng.integers(0, field.q, size=(k, n))
        out.matrices_enumerated += 1
        if ((G != 0).sum(axis=1) <= params.d).any():
            continue
        out.matrices_after_pruning += 1
        code = LinearCode(Matrix(field, G))
        if params.m == params.r:
            ok = verify_rbc(code, params, "lemma1", keep_witnesses=False).holds
        else:
            ok = verify_rbc(code, params, "naive", keep_witnesses=False).holds
        if ok:
            out.status = Status.FOUND
            out.witness = code
            return


def enumerate_rbcs(field: GF, k: int, n: int, params: RbcParams, budget: int = SEARCH_BUDGET):
    """Yield every canonical-form code with the property, in enumeration order."""
    _check_args(field, k, n, params)
    if canonical_count(field, k, n) > budget:
        raise SearchError(f"{canonical_count(field, k, n)} canonical candidates exceed budget {budget}")
    t = _Tester(field, k, params)
    hits, _, _ = _scan(field, k, n, params, range(len(t.classes)), stop_at_first=False)
    for idx in hits:
        yield t.code(idx)


def min_blocklength(field: GF, k: int, params: RbcParams, n_max: int, **kw) -> int | None:
    """Smallest ``n <= n_max`` admitting a code, or ``None`` if there is none.

    Every smaller ``n`` must be settled exhaustively; an Inconclusive step raises.
    """
    for n in range(1, n_max + 1):
        res = exists_rbc(field, k, n, params, "exhaustive", **kw)
        if res.status is Status.FOUND:
            return n
        if res.status is Status.INCONCLUSIVE:
            raise SearchError(f"n = {n} undecided within budget; cannot conclude min block length")
    return None


class SearchCache:
    """Append-only JSON-lines cache of search outcomes.

    Found witnesses are re-verified on load, so a corrupt cache can cost time
    but never produce a wrong answer.
    """

    def __init__(self, path):
        self.path = os.fspath(path)
        self._rows: dict[tuple, dict] = {}
        if os.path.exists(self.path):
            with open(self.path) as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rec = json.loads(line)
                        self._rows[tuple(rec["key"])] = rec

    def get(self, key, field: GF, params: RbcParams) -> SearchOutcome | None:
        rec = self._rows.get(tuple(key))
        if rec is None:
            return None
        q, k, n, *_ , tag = key
        out = SearchOutcome(Status(rec["status"]), field, k, n, params, tag,
                            matrices_enumerated=rec["matrices_enumerated"],
                            matrices_after_pruning=rec["matrices_after_pruning"],
                            wall_budget_used=rec["seconds"])
        if rec.get("witness") is not None:
            out.witness = LinearCode(Matrix(field, rec["witness"], (k, n)))
            if not verify_rbc(out.witness, params, "naive", keep_witnesses=False).holds:
                return None
        return out

    def put(self, key, out: SearchOutcome):
        rec = {
            "key": list(key),
            "status": out.status.value,
            "witness": out.witness.G.tolist() if out.witness is not None else None,
            "matrices_enumerated": out.matrices_enumerated,
            "matrices_after_pruning": out.matrices_after_pruning,
            "seconds": round(out.wall_budget_used, 6),
        }
        self._rows[tuple(key)] = rec
        with open(self.path, "a", newline="\n") as fh:
            fh.write(json.dumps(rec) + "\n")
