"""
Degree-one planar characteristic numbers by classical Schubert calculus.

A planar line is a flag (line, plane containing it).  The flag space is the
P^1-bundle P(Q^*) over G(2, 4), where Q is the universal quotient bundle, so
its ring is the Grassmannian ring extended by the plane class ``a`` subject to

    a^2 = sigma_1 a - sigma_2.

Meeting a line is sigma_1, passing through a point is sigma_2, and the top
class sigma_22 * a integrates to one.
"""
from __future__ import annotations

from functools import lru_cache

Partition = tuple[int, ...]

PARTITIONS: tuple[Partition, ...] = ((), (1,), (2,), (1, 1), (2, 1), (2, 2))

# sigma_lambda * sigma_mu in H*(G(2,4)), Pieri for sigma_1 / sigma_2 plus
# sigma_11^2 = sigma_22 and sigma_2 * sigma_11 = 0
_GR_TABLE: dict[tuple[Partition, Partition], dict[Partition, int]] = {
    ((1,), (1,)): {(2,): 1, (1, 1): 1},
    ((1,), (2,)): {(2, 1): 1},
    ((1,), (1, 1)): {(2, 1): 1},
    ((1,), (2, 1)): {(2, 2): 1},
    ((2,), (2,)): {(2, 2): 1},
    ((2,), (1, 1)): {},
    ((1, 1), (1, 1)): {(2, 2): 1},
}


def _size(p: Partition) -> int:
    return sum(p)


def gr_product(p: Partition, q: Partition) -> dict[Partition, int]:
    if p == ():
        return {q: 1}
    if q == ():
        return {p: 1}
    if _size(p) + _size(q) > 4:
        return {}
    if (p, q) in _GR_TABLE:
        return dict(_GR_TABLE[(p, q)])
    return dict(_GR_TABLE[(q, p)])


class FlagClass:
    """Element of H*(flag space), coefficients over sigma_lambda * a^k, k in {0, 1}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[Partition, int], int] | None = None):
        self.coeffs = {key: c for key, c in (coeffs or {}).items() if c}

    @classmethod
    def sigma(cls, p: Partition) -> "FlagClass":
        return cls({(p, 0): 1})

    def __add__(self, other: "FlagClass") -> "FlagClass":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return FlagClass(out)

    def __mul__(self, other: "FlagClass") -> "FlagClass":
        out: dict[tuple[Partition, int], int] = {}
        for (p, k), c in self.coeffs.items():
            for (q, l), e in other.coeffs.items():
                for key, v in _basis_product(p, k, q, l).items():
                    out[key] = out.get(key, 0) + c * e * v
        return FlagClass(out)

    def __pow__(self, n: int) -> "FlagClass":
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FlagClass) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"FlagClass({self.coeffs})"

    def integrate(self) -> int:
        return self.coeffs.get(((2, 2), 1), 0)


@lru_cache(maxsize=None)
def _basis_product_cached(p: Partition, k: int, q: Partition, l: int) -> tuple:
    base = gr_product(p, q)
    if k + l < 2:
        return tuple((lam, k + l, c) for lam, c in base.items())
    # a^2 = sigma_1 a - sigma_2
    out: dict[tuple[Partition, int], int] = {}
    for lam, c in base.items():
        for mu, e in gr_product(lam, (1,)).items():
            out[(mu, 1)] = out.get((mu, 1), 0) + c * e
        for mu, e in gr_product(lam, (2,)).items():
            out[(mu, 0)] = out.get((mu, 0), 0) - c * e
    return tuple((lam, kk, c) for (lam, kk), c in out.items())


def _basis_product(p: Partition, k: int, q: Partition, l: int) -> dict[tuple[Partition, int], int]:
    return {(lam, kk): c for lam, kk, c in _basis_product_cached(p, k, q, l)}


ONE = FlagClass({((), 0): 1})
SIGMA_1 = FlagClass.sigma((1,))
SIGMA_2 = FlagClass.sigma((2,))
A = FlagClass({((), 1): 1})


def n1(r: int, s: int, theta: int) -> int:
    """Number of planar lines meeting r lines and s points with plane class a^theta."""
    if min(r, s, theta) < 0:
        raise ValueError("r, s, theta must be nonnegative")
    if theta > 3 or r + 2 * s + theta != 5:
        return 0
    return (SIGMA_1**r * SIGMA_2**s * A**theta).integrate()
