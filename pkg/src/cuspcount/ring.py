"""
Cohomology ring of the incidence variety S = {(plane, point) : point in plane}.

S sits in dual-P3 x P3 and is the projectivisation of the rank-three bundle
ker(O^4 -> O(1)) over the dual P3.  With ``a`` the hyperplane class pulled back
from the space of planes and ``H`` the hyperplane class pulled back from P3,
the ring is

    Z[a, H] / (a^4, H^3 - a H^2 + a^2 H - a^3)

with the twelve-element basis ``a^i H^j`` for ``0 <= i <= 3`` and
``0 <= j <= 2``.  The top class is ``a^3 H^2`` (a fixed plane and a point in
it) and integrates to one.

Elements are :class:`RingClass` instances holding exact integer coefficients::

    >>> (H**3)
    a*H^2 - a^2*H + a^3
    >>> integrate(a**2 * H**3)
    1
"""
from __future__ import annotations

import hashlib
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, int]

A_MAX = 3
H_MAX = 2
DIM = A_MAX + H_MAX

BASIS: tuple[Monomial, ...] = tuple((i, j) for i in range(A_MAX + 1) for j in range(H_MAX + 1))
TOP: Monomial = (A_MAX, H_MAX)

# H^3 = a H^2 - a^2 H + a^3, as (da, dH, sign) shifts applied to a^i H^(j-3)
_H3_RULE = ((1, 2, 1), (2, 1, -1), (3, 0, 1))

PRESENTATION = "Z[a,H]/(a^4, H^3-a*H^2+a^2*H-a^3); basis a^i*H^j i<=3 j<=2; int(a^3*H^2)=1"


def degree(m: Monomial) -> int:
    return m[0] + m[1]


def basis_of_degree(k: int) -> tuple[Monomial, ...]:
    return tuple(m for m in BASIS if degree(m) == k)


def reduce(poly: Mapping[Monomial, int] | "RingClass") -> "RingClass":
    """Rewrite an integer polynomial ``{(i, j): c}`` (meaning sum c a^i H^j)
    over the basis, using a^4 = 0 and H^3 = aH^2 - a^2H + a^3."""
    if isinstance(poly, RingClass):
        return poly
    return RingClass._from_reduced(_reduce_terms(poly.items()))


def _reduce_terms(items: Iterable[tuple[Monomial, int]]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    stack = [((int(i), int(j)), int(c)) for (i, j), c in items]
    while stack:
        (i, j), c = stack.pop()
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial a^{i} H^{j}")
        if c == 0 or i > A_MAX:
            continue
        if j > H_MAX:
            for da, dh, sign in _H3_RULE:
                stack.append(((i + da, j - 3 + dh), sign * c))
            continue
        out[(i, j)] = out.get((i, j), 0) + c
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _monomial_product(m1: Monomial, m2: Monomial) -> tuple[tuple[Monomial, int], ...]:
    return tuple(sorted(_reduce_terms([((m1[0] + m2[0], m1[1] + m2[1]), 1)]).items()))


class RingClass:
    """An element of H*(S; Z), stored as reduced basis coefficients."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[Monomial, int] | None = None):
        self._coeffs = _reduce_terms(coeffs.items()) if coeffs else {}
        self._hash = None

    @classmethod
    def _from_reduced(cls, coeffs: dict[Monomial, int]) -> "RingClass":
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "RingClass":
        return cls({(i, j): coeff})

    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self._coeffs.items()))

    def __getitem__(self, m: Monomial) -> int:
        return self._coeffs.get(m, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingClass({(0, 0): other})
        if not isinstance(other, RingClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + c
        return RingClass._from_reduced({m: c for m, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return RingClass._from_reduced({m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def degree_part(self, k: int) -> "RingClass":
        return RingClass._from_reduced({m: c for m, c in self._coeffs.items() if degree(m) == k})

    def truncate(self, k: int) -> "RingClass":
        """Drop every component of degree above ``k``."""
        return RingClass._from_reduced({m: c for m, c in self._coeffs.items() if degree(m) <= k})

    def degrees(self) -> set[int]:
        return {degree(m) for m in self._coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        out = []
        for (i, j), c in sorted(self._coeffs.items(), key=lambda t: (degree(t[0]), -t[0][1], t[0][0])):
            parts = []
            if i:
                parts.append("a" if i == 1 else f"a^{i}")
            if j:
                parts.append("H" if j == 1 else f"H^{j}")
            mono = "*".join(parts)
            if not mono:
                term = str(abs(c))
            elif abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, term))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            text += f" {sign} {term}"
        return text


def _coerce(x) -> RingClass | None:
    if isinstance(x, RingClass):
        return x
    if isinstance(x, int):
        return RingClass({(0, 0): x}) if x else ZERO
    return None


def mul(x: RingClass, y: RingClass) -> RingClass:
    out: dict[Monomial, int] = {}
    for m1, c1 in x._coeffs.items():
        for m2, c2 in y._coeffs.items():
            for m, c in _monomial_product(m1, m2):
                out[m] = out.get(m, 0) + c1 * c2 * c
    return RingClass._from_reduced({m: c for m, c in out.items() if c})


def integrate(x: RingClass) -> int:
    """Degree pairing against the fundamental class of S."""
    return x[TOP]


ZERO = RingClass()
ONE = RingClass({(0, 0): 1})
a = RingClass({(1, 0): 1})
H = RingClass({(0, 1): 1})

# class of a point of P3 pulled back to S: planes through the point
POINT = H**3


def chern_w() -> tuple[RingClass, RingClass]:
    """Chern classes of the tangent-to-the-plane bundle W on S.

    From 0 -> W -> TP3 -> O(a) (x) O(H) -> 0 we get c(W) = (1+H)^4 / (1+a+H).
    """
    x = a + H
    inverse = ONE
    power = ONE
    for _ in range(DIM):
        power = power * (-x)
        inverse = inverse + power
    total = (1 + H) ** 4 * inverse
    return total.degree_part(1), total.degree_part(2)


@lru_cache(maxsize=None)
def pairing_matrix() -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(integrate(RingClass({e: 1}) * RingClass({f: 1})) for f in BASIS)
        for e in BASIS
    )


@lru_cache(maxsize=None)
def _inverse_pairing() -> tuple[tuple[int, ...], ...]:
    import sympy

    g = sympy.Matrix(pairing_matrix())
    if g.det() == 0:
        raise ArithmeticError("Poincare pairing is singular; ring reduction is inconsistent")
    inv = g.inv()
    if any(not x.is_integer for x in inv):
        raise ArithmeticError("Poincare pairing is not unimodular")
    return tuple(tuple(int(inv[p, q]) for q in range(len(BASIS))) for p in range(len(BASIS)))


@lru_cache(maxsize=None)
def poincare_dual(m: Monomial) -> RingClass:
    """The class T^m with integrate(T_e * T^m) = [e == m] over the basis."""
    if m not in BASIS:
        raise ValueError(f"{m} is not a basis monomial")
    row = _inverse_pairing()[BASIS.index(m)]
    return RingClass({f: c for f, c in zip(BASIS, row) if c})


def fingerprint() -> str:
    """Short digest of the ring presentation, used to tag persisted caches."""
    return hashlib.sha256(PRESENTATION.encode()).hexdigest()[:16]
