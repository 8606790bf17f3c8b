"""Lower bound on the block length of ``(r, r, d)`` robust batch codes.

    n >= k(d+1) - max(0, d(r-1) - (k-r)^2 / 2)

The bound equals the repetition length ``k(d+1)`` exactly when
``2d(r-1) <= (k-r)^2``; that integer test decides the regime, never a square
root.  :func:`repetition_threshold` is the closed-form (slightly
conservative) cut-off ``k + d - sqrt((k+d)^2 - k^2)``, kept for display.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple


class Regime(str, enum.Enum):
    REPETITION_OPTIMAL = "repetition_optimal"
    PENALTY_ACTIVE = "penalty_active"


class BoundResult(NamedTuple):
    k: int
    r: int
    d: int
    lower_bound: Fraction
    lower_bound_int: int
    regime: Regime
    threshold_r: float

    def render(self) -> str:
        return (
            f"k={self.k} r={self.r} d={self.d}\n"
            f"lower_bound: {self.lower_bound}\n"
            f"lower_bound_int: {self.lower_bound_int}\n"
            f"regime: {self.regime.value}\n"
            f"threshold_r: {self.threshold_r:.6f}\n"
        )


def _check(k: int, r: int, d: int):
    if not (1 <= r <= k) or d < 0:
        raise ValueError(f"need 1 <= r <= k and d >= 0, got k={k}, r={r}, d={d}")


def penalty(k: int, r: int, d: int) -> Fraction:
    """``d(r-1) - (k-r)^2 / 2``; the bound drops below ``k(d+1)`` only when this is positive."""
    return d * (r - 1) - Fraction((k - r) ** 2, 2)


def repetition_optimal(k: int, r: int, d: int) -> bool:
    _check(k, r, d)
    return 2 * d * (r - 1) <= (k - r) ** 2


_REP, _PEN = Regime.REPETITION_OPTIMAL, Regime.PENALTY_ACTIVE


def theorem_bound(k: int, r: int, d: int) -> BoundResult:
    _check(k, r, d)
    # all arithmetic on twice the bound, so it stays in the integers
    excess = 2 * d * (r - 1) - (k - r) ** 2
    if excess > 0:
        twice, regime = 2 * k * (d + 1) - excess, _PEN
    else:
        twice, regime = 2 * k * (d + 1), _REP
    threshold = k + d - math.sqrt((k + d) ** 2 - k * k)
    return BoundResult(k, r, d, Fraction(twice, 2) if twice & 1 else Fraction(twice >> 1), -(-twice // 2), regime, threshold)


def repetition_threshold(k: int, d: int) -> float:
    """``k + d - sqrt((k + d)^2 - k^2)``; equals ``k`` at ``d = 0``."""
    if k < 1 or d < 0:
        raise ValueError(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    return k + d - math.sqrt((k + d) ** 2 - k * k)


@dataclass(frozen=True)
class FigureRow:
    d: int
    r: int
    rate_upper_bound: Fraction


def figure_table(k: int, d_list: Iterable[int], r_range: Iterable[int] | None = None) -> list[FigureRow]:
    """Upper bound ``k / lower_bound`` on the rate, one row per ``(d, r)``, ordered by d then r."""
    rs = list(range(1, k + 1) if r_range is None else r_range)
    rows = []
    for d in d_list:
        for r in rs:
            rows.append(FigureRow(d, r, k / theorem_bound(k, r, d).lower_bound))
    return rows


def figure_csv(rows: Iterable[FigureRow]) -> str:
    out = io.StringIO(newline="\n")
    out.write("d,r,rate_upper_bound\n")
    for row in rows:
        out.write(f"{row.d},{row.r},{float(row.rate_upper_bound):.6g}\n")
    return out.getvalue()
