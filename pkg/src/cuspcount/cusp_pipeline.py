"""
Counting rational planar cuspidal curves.

The derivative at the marked point is a section of L* (x) ev*W over the
cycle of one-pointed planar curves through r lines and s points.  It
vanishes on cuspidal curves and on ghost-bubble configurations (a constant
component carrying the marked point between components of degrees d1, d2),
each with multiplicity one, so

    count = e(L* (x) ev*W) - boundary.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, NonIntegralError, ValidationError
from .taut import Tautological, default_calculus, splittings

log = logging.getLogger(__name__)

# c1(L*)^2 + c1(L*) c1(W) + c2(W) with c1(W) = 3H - a, c2(W) = a^2 - 2aH + 3H^2,
# as (coefficient, (i, j, theta)) against phi(d, i, j, r, s, theta)
EULER_TERMS: tuple[tuple[int, tuple[int, int, int]], ...] = (
    (1, (2, 0, 0)),
    (-1, (1, 0, 1)),
    (3, (1, 1, 0)),
    (1, (0, 0, 2)),
    (-2, (0, 1, 1)),
    (3, (0, 2, 0)),
)

MULTIPLICITY_CUSP = 1
MULTIPLICITY_GHOST = 1


@dataclass(frozen=True)
class CuspResult:
    d: int
    r: int
    s: int
    euler: Fraction
    boundary: Fraction
    count: int

    def as_dict(self) -> dict[str, str]:
        return {"d": str(self.d), "r": str(self.r), "s": str(self.s),
                "euler": str(self.euler), "boundary": str(self.boundary), "count": str(self.count)}


def valid_pairs(d: int) -> list[tuple[int, int]]:
    """All (r, s) with r + 2s = 3d + 1, ordered by s."""
    return [(3 * d + 1 - 2 * s, s) for s in range((3 * d + 1) // 2 + 1)]


def _check(d: int, r: int, s: int) -> None:
    if d < 1 or r < 0 or s < 0:
        raise ValidationError(f"need d >= 1 and r, s >= 0, got d={d} r={r} s={s}")
    if r + 2 * s != 3 * d + 1:
        raise DimensionMismatchError(f"dimension-mismatch: r + 2s = {r + 2 * s} but 3d + 1 = {3 * d + 1}")


def euler_class(d: int, r: int, s: int, calc: Tautological | None = None) -> Fraction:
    _check(d, r, s)
    calc = calc or default_calculus()
    return sum((c * calc.phi(d, i, j, r, s, theta) for c, (i, j, theta) in EULER_TERMS), Fraction(0))


def boundary(d: int, r: int, s: int, calc: Tautological | None = None, theta: int = 0) -> Fraction:
    """Ghost-bubble contribution; the 1/2 undoes the (d1, d2) <-> (d2, d1) double count."""
    _check(d, r, s)
    calc = calc or default_calculus()
    total = sum(w * d1 * d2 * calc.b_split(d1, d2, r1, s1, r2, s2, theta)
                for d1, d2, r1, s1, r2, s2, w in splittings(d, r, s))
    return Fraction(total, 2)


def cusp_count(d: int, r: int, s: int, calc: Tautological | None = None,
               allow_d1: bool = False) -> CuspResult:
    _check(d, r, s)
    if d == 1 and not allow_d1:
        raise ValidationError("d = 1 is outside the counting setup (a line lies in a pencil of planes); "
                              "pass allow_d1 to evaluate anyway")
    calc = calc or default_calculus()
    e = MULTIPLICITY_CUSP * euler_class(d, r, s, calc)
    b = MULTIPLICITY_GHOST * boundary(d, r, s, calc)
    count = e - b
    if count.denominator != 1:
        raise NonIntegralError(f"non-integral count C_{d}({r},{s}) = {count}")
    if count < 0:
        log.warning("negative count C_%d(%d,%d) = %s", d, r, s, count)
    if d == 1 and count != 0:
        log.warning("d = 1 evaluates to %s (expected 0)", count)
    return CuspResult(d, r, s, e, b, int(count))


def cusp_table(d: int, calc: Tautological | None = None, allow_d1: bool = False,
               jobs: int = 1) -> list[CuspResult]:
    """Counts for every admissible (r, s) in degree d, in order of s."""
    calc = calc or default_calculus()
    if d < 1 or (d == 1 and not allow_d1):
        raise ValidationError(f"table needs d >= 2 (d = 1 only with allow_d1), got {d}")
    pairs = valid_pairs(d)
    if jobs <= 1:
        return [cusp_count(d, r, s, calc, allow_d1) for r, s in pairs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda rs: cusp_count(d, rs[0], rs[1], calc, allow_d1), pairs))
