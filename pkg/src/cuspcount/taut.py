"""
Intersections of tautological classes on the one-pointed planar moduli space.

``phi(d, i, j, r, s, theta)`` pairs c1(L*)^i (ev* H)^j with the cycle of
degree-d planar curves meeting r lines and s points, with plane class
a^theta.  It vanishes unless r + 2s + theta + i + j = 3d + 3.  Level zero
reduces to base numbers by forgetting the marked point; levels one and two
substitute the divisor expression

    c1(L*) = H_L / d^2 - (2/d) ev*H + (1/d^2) sum_{d1+d2=d} d2^2 B_{d1,d2}

where B_{d1,d2} is the boundary divisor of two-component maps with the
marked point on the degree-d1 component.  Boundary terms are evaluated with
the diagonal of the space of planes split as sum_i a^i x a^(3-i).
"""
from __future__ import annotations

import logging
import threading
from fractions import Fraction
from math import comb
from typing import Iterator

from .errors import EngineError, UnsupportedLevelError, ValidationError
from .gw_base import BaseNumbers, default_provider

log = logging.getLogger(__name__)

SUPPORTED_LEVELS = "i=0 with any j; i=1 with j in {0,1}; i=2 with j=0"


def is_supported(i: int, j: int) -> bool:
    return (i == 0 and j >= 0) or (i == 1 and j in (0, 1)) or (i == 2 and j == 0)


def splittings(d: int, r: int, s: int) -> Iterator[tuple[int, int, int, int, int, int, int]]:
    """Yield (d1, d2, r1, s1, r2, s2, C(r,r1) C(s,s1)) over positive degree splits."""
    for d1 in range(1, d):
        for r1 in range(r + 1):
            for s1 in range(s + 1):
                yield d1, d - d1, r1, s1, r - r1, s - s1, comb(r, r1) * comb(s, s1)


def _check_nonneg(*args: int) -> None:
    if min(args) < 0:
        raise ValidationError(f"arguments must be nonnegative, got {args}")


class Tautological:
    """Level 0/1/2 numbers and boundary sums over a base-number provider."""

    def __init__(self, base: BaseNumbers | None = None):
        self.base = base or default_provider()
        self._phi: dict[tuple[int, ...], Fraction] = {}
        self._lock = threading.Lock()

    def N(self, d: int, r: int, s: int, theta: int) -> int:
        if theta > 3:
            return 0
        return self.base.base_number(d, r, s, theta)

    def b_split(self, d1: int, d2: int, r1: int, s1: int, r2: int, s2: int, theta: int) -> int:
        """Ordered two-component configurations glued along a common plane."""
        if d1 < 1 or d2 < 1:
            raise ValidationError("b_split needs positive component degrees")
        _check_nonneg(r1, s1, r2, s2, theta)
        return sum(self.N(d1, r1, s1, i) * self.N(d2, r2, s2, theta + 3 - i) for i in range(4))

    def b_marked(self, d1: int, d2: int, r: int, s: int, theta: int) -> int:
        """Degree of the boundary divisor B_{d1,d2} against ev*H and the constraints.

        d1 d2 choices of node times d1 points of the d1-component on a hyperplane.
        """
        if d1 < 1 or d2 < 1:
            raise ValidationError("b_marked needs d1, d2 >= 1")
        _check_nonneg(r, s, theta)
        total = 0
        for r1 in range(r + 1):
            for s1 in range(s + 1):
                total += comb(r, r1) * comb(s, s1) * self.b_split(d1, d2, r1, s1, r - r1, s - s1, theta)
        return d1 * d1 * d2 * total

    def b_tilde(self, d1: int, d2: int, r1: int, s1: int, r2: int, s2: int, theta: int) -> Fraction:
        if d1 < 1 or d2 < 1:
            raise ValidationError("b_tilde needs positive component degrees")
        _check_nonneg(r1, s1, r2, s2, theta)
        return sum((self.phi(d1, 1, 0, r1, s1, i) * self.N(d2, r2, s2, theta + 3 - i) for i in range(4)),
                   Fraction(0))

    def t1(self, d: int, r: int, s: int, theta: int) -> int:
        _check_nonneg(d, r, s, theta)
        return sum(w * d1 * d2**3 * self.b_split(d1, d2, r1, s1, r2, s2, theta)
                   for d1, d2, r1, s1, r2, s2, w in splittings(d, r, s))

    def t2(self, d: int, r: int, s: int, theta: int) -> Fraction:
        _check_nonneg(d, r, s, theta)
        return sum((w * d1 * d2**3 * self.b_tilde(d1, d2, r1, s1, r2, s2, theta)
                    for d1, d2, r1, s1, r2, s2, w in splittings(d, r, s)), Fraction(0))

    def phi(self, d: int, i: int, j: int, r: int, s: int, theta: int) -> Fraction:
        if d < 1:
            raise ValidationError("phi needs d >= 1")
        _check_nonneg(i, j, r, s, theta)
        if not is_supported(i, j):
            raise UnsupportedLevelError(f"unsupported-level ({i}, {j}); supported: {SUPPORTED_LEVELS}")
        if r + 2 * s + theta + i + j != 3 * d + 3:
            return Fraction(0)
        key = (d, i, j, r, s, theta)
        cached = self._phi.get(key)
        if cached is not None:
            return cached
        value = self._phi_on_shell(d, i, j, r, s, theta)
        if value.denominator != 1:
            log.info("non-integral phi%s = %s", key, value)
        with self._lock:
            old = self._phi.setdefault(key, value)
        if old != value:
            raise EngineError(f"nondeterministic phi{key}: {old} != {value}")
        return value

    def _phi_on_shell(self, d, i, j, r, s, theta) -> Fraction:
        if i == 0:
            if j == 1:
                return Fraction(d * self.N(d, r, s, theta))
            if j == 2:
                return Fraction(self.N(d, r + 1, s, theta))
            if j == 3:
                return Fraction(self.N(d, r, s + 1, theta))
            # j = 0 is pulled back from the unmarked space; j > 3 has ev*H^j = 0
            return Fraction(0)
        dd = Fraction(1, d * d)
        if i == 1 and j == 0:
            return Fraction(-2 * self.N(d, r, s, theta))
        if i == 1:
            boundary = sum(d2 * d2 * self.b_marked(d1, d2, r, s, theta) for d1, d2 in _degree_pairs(d))
            return (dd * self.phi(d, 0, 1, r + 1, s, theta)
                    - Fraction(2, d) * self.phi(d, 0, 2, r, s, theta)
                    + dd * boundary)
        return (dd * self.phi(d, 1, 0, r + 1, s, theta)
                - Fraction(2, d) * self.phi(d, 1, 1, r, s, theta)
                + dd * (self.t1(d, r, s, theta) + self.t2(d, r, s, theta)))

    def cached_phi(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._phi)

    def seed_phi(self, values: dict[tuple[int, ...], Fraction]) -> None:
        with self._lock:
            for key, value in values.items():
                old = self._phi.setdefault(tuple(key), value)
                if old != value:
                    raise EngineError(f"conflicting phi{key}: {old} != {value}")


def _degree_pairs(d: int) -> Iterator[tuple[int, int]]:
    for d1 in range(1, d):
        yield d1, d - d1


_default: Tautological | None = None
_default_lock = threading.Lock()


def default_calculus() -> Tautological:
    global _default
    with _default_lock:
        if _default is None:
            _default = Tautological()
        return _default


def phi(d: int, i: int, j: int, r: int, s: int, theta: int) -> Fraction:
    return default_calculus().phi(d, i, j, r, s, theta)


def b_split(d1, d2, r1, s1, r2, s2, theta) -> int:
    return default_calculus().b_split(d1, d2, r1, s1, r2, s2, theta)


def b_marked(d1, d2, r, s, theta) -> int:
    return default_calculus().b_marked(d1, d2, r, s, theta)


def b_tilde(d1, d2, r1, s1, r2, s2, theta) -> Fraction:
    return default_calculus().b_tilde(d1, d2, r1, s1, r2, s2, theta)


def t1(d, r, s, theta) -> int:
    return default_calculus().t1(d, r, s, theta)


def t2(d, r, s, theta) -> Fraction:
    return default_calculus().t2(d, r, s, theta)
