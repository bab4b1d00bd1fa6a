"""
Base characteristic numbers N_d(r, s, theta) of planar rational curves in P3.

A planar stable map of degree d is the same thing as a genus-zero stable map
to the incidence variety S whose class is d times the line class of a fibre
plane: the projection to the space of planes has degree zero on a connected
domain, so it is constant.  We therefore compute genus-zero invariants of S
in fibre classes,

    <g_1, ..., g_n>_d ,  nonzero only if  sum deg g_k = 3d + n + 2,

and read off

    N_d(r, s, theta) = (1/d) <H^2 x r, P x s, a^theta H>_d

where P = H^3 (reduced) is the point condition.  S is homogeneous, so the
invariants are enumerative and satisfy the associativity (WDVV) equations.
Splittings of a fibre class only involve fibre classes, since ``a`` is nef
and vanishes on the fibres.

The solver works on a canonical form of each insertion list:

* ``a`` is pulled back from the base, and all marked points land in the same
  plane, so powers of ``a`` move freely between insertions (this is the WDVV
  relation with the divisor ``a`` in the first slot).  All of them are parked
  on a single carrier insertion.
* a bare ``H`` is removed by the divisor axiom (factor d), a bare ``a`` or a
  fundamental class kills a positive-degree invariant.

What is left is a multiset of H^2 insertions plus at most one carrier
a^A H^j.  Two-point invariants are initial data; everything with three or
more points is reconstructed from WDVV with special slots (H, H | H^2, g),
whose remaining terms all have fewer points or smaller degree.
"""
from __future__ import annotations

import logging
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import flag_oracle, ring
from .errors import (
    EngineError,
    MissingBaseNumberError,
    NonIntegralError,
    ProviderMismatchError,
    ReconstructionError,
    ValidationError,
)
from .ring import BASIS, Monomial, RingClass, degree

log = logging.getLogger(__name__)

H1: Monomial = (0, 1)
A1: Monomial = (1, 0)
H2: Monomial = (0, 2)
FUNDAMENTAL: Monomial = (0, 0)

MODES = ("engine", "table", "hybrid")


@dataclass(frozen=True)
class BaseKey:
    d: int
    r: int
    s: int
    theta: int

    def __post_init__(self):
        if self.d < 1 or min(self.r, self.s, self.theta) < 0:
            raise ValidationError(f"invalid base key {self}")

    @property
    def on_shell(self) -> bool:
        return self.theta <= 3 and self.r + 2 * self.s + self.theta == 3 * self.d + 2


@dataclass(frozen=True)
class InvariantKey:
    """Fibre degree and insertion multiset; insertions are kept sorted."""

    d: int
    insertions: tuple[Monomial, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValidationError("fibre degree must be nonnegative")
        ins = tuple(sorted(tuple(m) for m in self.insertions))
        for m in ins:
            if m not in BASIS:
                raise ValidationError(f"{m} is not a basis monomial")
        object.__setattr__(self, "insertions", ins)

    @property
    def n(self) -> int:
        return len(self.insertions)

    @property
    def on_shell(self) -> bool:
        return sum(map(degree, self.insertions)) == 3 * self.d + self.n + 2


@dataclass
class ProviderConfig:
    mode: str = "engine"
    table_path: Path | None = None
    check_oracle: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"unknown provider mode {self.mode!r}; expected one of {MODES}")


def _multiset_splits(items: Sequence) -> Iterator[tuple[tuple, tuple, int]]:
    """All ways of splitting a multiset in two, with the number of ordered
    index choices realising each split."""
    groups = sorted(Counter(items).items(), key=lambda kv: repr(kv[0]))
    for picks in product(*(range(k + 1) for _, k in groups)):
        left: list = []
        right: list = []
        weight = 1
        for (item, k), p in zip(groups, picks):
            left += [item] * p
            right += [item] * (k - p)
            weight *= comb(k, p)
        yield tuple(left), tuple(right), weight


def _compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def expand(classes: Iterable[RingClass]) -> dict[tuple[Monomial, ...], int]:
    """Multilinear expansion of an insertion list into sorted monomial tuples."""
    out: dict[tuple[Monomial, ...], int] = {(): 1}
    for cls, mult in Counter(classes).items():
        terms = list(cls.items())
        if not terms:
            return {}
        group: dict[tuple[Monomial, ...], int] = {}
        for comp in _compositions(mult, len(terms)):
            coeff = factorial(mult)
            mons: list[Monomial] = []
            for (m, c), k in zip(terms, comp):
                coeff = coeff // factorial(k) * c**k
                mons += [m] * k
            group[tuple(mons)] = group.get(tuple(mons), 0) + coeff
        nxt: dict[tuple[Monomial, ...], int] = {}
        for key, c in out.items():
            for gkey, gc in group.items():
                merged = tuple(sorted(key + gkey))
                nxt[merged] = nxt.get(merged, 0) + c * gc
        out = {k: v for k, v in nxt.items() if v}
    return out


class GWEngine:
    """Memoised fibre-class genus-zero invariants of S."""

    def __init__(self):
        self._cache: dict[tuple[int, tuple[Monomial, ...]], Fraction] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._cache)

    def invariant(self, key: InvariantKey | int, insertions: Iterable[Monomial] | None = None) -> Fraction:
        if not isinstance(key, InvariantKey):
            key = InvariantKey(key, tuple(insertions or ()))
        return self._value(key.d, key.insertions)

    def invariant_of_classes(self, d: int, classes: Sequence[RingClass]) -> Fraction:
        """Invariant with arbitrary ring classes inserted, by multilinearity."""
        if d < 0:
            raise ValidationError("fibre degree must be nonnegative")
        total = Fraction(0)
        target = 3 * d + len(classes) + 2
        for mons, c in expand(classes).items():
            if sum(map(degree, mons)) == target:
                total += c * self._value(d, mons)
        return total

    def _value(self, d: int, ins: tuple[Monomial, ...]) -> Fraction:
        n = len(ins)
        if sum(map(degree, ins)) != 3 * d + n + 2:
            return Fraction(0)
        if d == 0:
            if n != 3:
                return Fraction(0)
            x, y, z = (RingClass({m: 1}) for m in ins)
            return Fraction(ring.integrate(x * y * z))
        factor, canon = canonical_form(d, ins)
        if factor == 0:
            return Fraction(0)
        if canon != ins:
            return factor * self._value(d, canon)
        cached = self._cache.get((d, ins))
        if cached is not None:
            return cached
        value = self._two_point(d, ins) if n == 2 else self.solve_invariant(InvariantKey(d, ins))
        self._remember(d, ins, value)
        return value

    def _remember(self, d: int, ins: tuple[Monomial, ...], value: Fraction) -> None:
        with self._lock:
            old = self._cache.get((d, ins))
            if old is not None and old != value:
                raise EngineError(f"nondeterministic invariant at d={d} {ins}: {old} != {value}")
            self._cache[(d, ins)] = value

    @staticmethod
    def _two_point(d: int, ins: tuple[Monomial, ...]) -> Fraction:
        # d = 1: one line through two points of a plane; on a fixed plane the
        # fibre integral of H^2 x H^2 is 1 and the remaining a^3 pins the plane.
        # d >= 2 needs total degree >= 10, i.e. a^6 = 0.
        (i1, j1), (i2, j2) = ins
        return Fraction(int(d == 1 and j1 == j2 == 2 and i1 + i2 == 3))

    def solve_invariant(self, key: InvariantKey) -> Fraction:
        """Reconstruct a canonical invariant with at least three points.

        Uses WDVV with special slots (H, H | H^2, g): the target appears once
        on the left, every other term has fewer points or smaller degree.
        """
        d, ins = key.d, key.insertions
        if not key.on_shell:
            return Fraction(0)
        if d < 1 or key.n < 3 or any(degree(m) < 2 for m in ins):
            raise ReconstructionError(f"key {key} is not in solver form")
        rest = list(ins)
        if rest.count(H2) < 2:
            raise ReconstructionError(f"unreachable-by-reconstruction: {key}")
        rest.remove(H2)
        rest.remove(H2)
        g3 = next((m for m in rest if m != H2), H2)
        rest.remove(g3)
        hcls, h2cls, g3cls = ring.H, RingClass({H2: 1}), RingClass({g3: 1})
        extras = tuple(RingClass({m: 1}) for m in rest)
        lhs_rest = self._wdvv_side(d, hcls, hcls, h2cls, g3cls, extras, skip_target=True)
        rhs = self._wdvv_side(d, hcls, h2cls, hcls, g3cls, extras, skip_target=False)
        return rhs - lhs_rest

    def _wdvv_side(self, d, ga, gb, gc, gd, extras, skip_target=False) -> Fraction:
        total = Fraction(0)
        for d1 in range(d + 1):
            d2 = d - d1
            for left_extra, right_extra, weight in _multiset_splits(extras):
                if skip_target and d1 == 0 and not left_extra:
                    continue
                if d1 == 0 and len(left_extra) > 0:
                    continue  # degree-zero invariants need exactly three points
                if d2 == 0 and len(right_extra) > 0:
                    continue
                fixed = sum(min(cls.degrees(), default=0) for cls in (ga, gb, *left_extra))
                for e in BASIS:
                    if degree(e) + fixed > 3 * d1 + len(left_extra) + 5:
                        continue
                    left = self.invariant_of_classes(d1, (ga, gb, *left_extra, RingClass({e: 1})))
                    if not left:
                        continue
                    right = self.invariant_of_classes(
                        d2, (ring.poincare_dual(e), gc, gd, *right_extra)
                    )
                    total += weight * left * right
        return total

    def wdvv_residual(self, d: int, ga: RingClass, gb: RingClass, gc: RingClass, gd: RingClass,
                      extras: Sequence[RingClass] = ()) -> Fraction:
        """LHS - RHS of the associativity relation (ga gb | gc gd) vs (ga gc | gb gd)."""
        extras = tuple(extras)
        return (self._wdvv_side(d, ga, gb, gc, gd, extras)
                - self._wdvv_side(d, ga, gc, gb, gd, extras))


def canonical_form(d: int, ins: tuple[Monomial, ...]) -> tuple[int, tuple[Monomial, ...]]:
    """Normalise a positive-degree insertion list.

    Returns ``(factor, canon)`` with <ins>_d = factor * <canon>_d; factor 0
    means the invariant vanishes.
    """
    total_a = sum(i for i, _ in ins)
    if total_a > ring.A_MAX:
        return 0, ()
    factor = d ** ins.count(H1)
    # bare H goes through the divisor axiom before any a-power is moved onto it
    hs = sorted(j for m in ins if m != H1 for j in (m[1],))
    if total_a and not hs:
        return 0, ()
    canon: list[Monomial] = []
    if total_a:
        carrier = (total_a, hs.pop(0))
        if carrier == A1:
            return 0, ()
        canon.append(carrier)
    for j in hs:
        if j == 0:
            return 0, ()
        if j == 1:
            factor *= d
        else:
            canon.append((0, j))
    return factor, tuple(sorted(canon))


class BaseNumbers:
    """Provider of N_d(r, s, theta) backed by the WDVV engine and/or a table."""

    def __init__(self, config: ProviderConfig | None = None, engine: GWEngine | None = None):
        self.config = config or ProviderConfig()
        self.engine = engine or GWEngine()
        self._table: dict[BaseKey, int] = {}
        self._cache: dict[BaseKey, int] = {}
        self._lock = threading.Lock()
        if self.config.table_path is not None:
            self.import_table(self.config.table_path)

    def base_number(self, d: int, r: int, s: int, theta: int) -> int:
        key = BaseKey(d, r, s, theta)
        if not key.on_shell:
            return 0
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        mode = self.config.mode
        if mode == "table":
            if key not in self._table:
                raise MissingBaseNumberError(f"no table entry for N{(d, r, s, theta)}")
            value = self._table[key]
        else:
            value = self._compute(key)
            if mode == "hybrid" and key in self._table and self._table[key] != value:
                raise ProviderMismatchError(
                    f"N{(d, r, s, theta)}: table has {self._table[key]}, engine gives {value}")
        if d == 1 and self.config.check_oracle:
            expected = flag_oracle.n1(r, s, theta)
            if value != expected:
                raise ProviderMismatchError(
                    f"N{(1, r, s, theta)} = {value} disagrees with the Schubert oracle {expected}")
        if value < 0:
            log.info("negative base number N%s = %s", (d, r, s, theta), value)
        self._store(key, value)
        return value

    def _compute(self, key: BaseKey) -> int:
        classes = ([RingClass({H2: 1})] * key.r + [ring.POINT] * key.s
                   + [RingClass({(key.theta, 1): 1})])
        value = self.engine.invariant_of_classes(key.d, classes) / key.d
        if value.denominator != 1:
            raise NonIntegralError(f"non-integral base number N{(key.d, key.r, key.s, key.theta)} = {value}")
        return int(value)

    def _store(self, key: BaseKey, value: int) -> None:
        with self._lock:
            old = self._cache.get(key)
            if old is not None and old != value:
                raise EngineError(f"nondeterministic base number {key}: {old} != {value}")
            self._cache[key] = value

    def seed(self, values: dict[BaseKey, int]) -> None:
        """Preload memoised values (e.g. from a persisted cache)."""
        for key, value in values.items():
            if key.d == 1 and self.config.check_oracle and value != flag_oracle.n1(key.r, key.s, key.theta):
                raise ProviderMismatchError(
                    f"cached N{(1, key.r, key.s, key.theta)} = {value} disagrees with the Schubert oracle")
            self._store(key, value)

    def add_table_entry(self, key: BaseKey, value: int) -> None:
        old = self._table.get(key)
        if old is not None and old != value:
            raise ProviderMismatchError(f"conflicting table entries for {key}: {old} vs {value}")
        if self.config.mode == "hybrid" and key.on_shell:
            computed = self._compute(key)
            if computed != value:
                raise ProviderMismatchError(f"N{(key.d, key.r, key.s, key.theta)}: table has {value}, engine gives {computed}")
        self._table[key] = value

    def import_table(self, path) -> int:
        from .store import load

        records = [rec for rec in load(path, require_header=False) if rec.kind == "N"]
        for rec in records:
            if rec.value.denominator != 1:
                raise NonIntegralError(f"non-integral table entry {rec}")
            self.add_table_entry(BaseKey(*rec.key), int(rec.value))
        return len(records)

    def computed(self) -> dict[BaseKey, int]:
        return dict(self._cache)


_default: BaseNumbers | None = None
_default_lock = threading.Lock()


def default_provider() -> BaseNumbers:
    global _default
    with _default_lock:
        if _default is None:
            _default = BaseNumbers()
        return _default


def invariant(key: InvariantKey | int, insertions: Iterable[Monomial] | None = None) -> Fraction:
    return default_provider().engine.invariant(key, insertions)


def base_number(d: int, r: int, s: int, theta: int) -> int:
    return default_provider().base_number(d, r, s, theta)
