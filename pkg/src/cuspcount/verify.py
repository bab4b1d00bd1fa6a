"""Self-checks behind ``cuspcount verify``: known low-degree counts plus property suites."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import flag_oracle, ring
from .gw_base import BASIS
from .cusp_pipeline import cusp_count, valid_pairs
from .ring import RingClass, degree
from .taut import Tautological

KNOWN_COUNTS: dict[tuple[int, int, int], int] = {
    (2, 7, 0): 0, (2, 5, 1): 0, (2, 3, 2): 0, (2, 1, 3): 0,
    (3, 10, 0): 17760, (3, 8, 1): 2064, (3, 6, 2): 240, (3, 4, 3): 24,
    (4, 13, 0): 10613184, (4, 11, 1): 760368, (4, 9, 2): 49152, (4, 7, 3): 2304,
}

D1_TUPLES = [(r, s, t) for t in range(4) for s in range(3) for r in range(6) if r + 2 * s + t == 5]


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float = 0.0
    diffs: list[str] = field(default_factory=list)


def _run(name: str, fn: Callable[[], list[str]]) -> CheckResult:
    start = time.perf_counter()
    diffs = fn()
    return CheckResult(name, not diffs, time.perf_counter() - start, diffs)


def check_known_counts(calc: Tautological, max_degree: int) -> list[str]:
    diffs = []
    for (d, r, s), expected in sorted(KNOWN_COUNTS.items()):
        if d > max_degree:
            continue
        got = cusp_count(d, r, s, calc).count
        if got != expected:
            diffs.append(f"C_{d}({r},{s}): expected {expected}, computed {got}")
    return diffs


def check_oracle(calc: Tautological) -> list[str]:
    return [f"N_1{t}: engine {calc.base.base_number(1, *t)}, Schubert {flag_oracle.n1(*t)}"
            for t in D1_TUPLES if calc.base.base_number(1, *t) != flag_oracle.n1(*t)]


def check_gates(calc: Tautological, max_degree: int, samples: int = 500, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    diffs = []
    done = 0
    while done < samples:
        d = rng.randint(1, max_degree)
        r, s, theta = rng.randint(0, 3 * d + 4), rng.randint(0, d + 2), rng.randint(0, 4)
        if r + 2 * s + theta != 3 * d + 2 and calc.base.base_number(d, r, s, theta) != 0:
            diffs.append(f"N{(d, r, s, theta)} off-shell but nonzero")
        i, j = rng.choice([(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (1, 1), (2, 0)])
        if r + 2 * s + theta + i + j != 3 * d + 3 and calc.phi(d, i, j, r, s, theta) != 0:
            diffs.append(f"phi{(d, i, j, r, s, theta)} off-shell but nonzero")
        done += 1
    return diffs


def _split_keys(max_degree: int):
    for d in range(2, max_degree + 1):
        for d1 in range(1, d):
            d2 = d - d1
            for theta in range(4):
                for r in range(3 * d + 2):
                    for s in range(d + 2):
                        if r + 2 * s + theta != 3 * d + 1:
                            continue
                        for r1 in range(r + 1):
                            for s1 in range(s + 1):
                                yield d1, d2, r1, s1, r - r1, s - s1, theta


def check_identities(calc: Tautological, max_degree: int) -> list[str]:
    diffs = []
    for key in _split_keys(max_degree):
        b = calc.b_split(*key)
        if calc.b_tilde(*key) != -2 * b:
            diffs.append(f"b_tilde{key} != -2 b_split")
        d1, d2, r1, s1, r2, s2, theta = key
        if theta == 0 and calc.b_split(d2, d1, r2, s2, r1, s1, 0) != b:
            diffs.append(f"b_split{key} not symmetric")
    for d in range(1, max_degree + 1):
        for theta in range(4):
            for s in range(d + 2):
                r = 3 * d + 1 - theta - 2 * s
                if r >= 0 and calc.t2(d, r, s, theta) != -2 * calc.t1(d, r, s, theta):
                    diffs.append(f"t2 != -2 t1 at {(d, r, s, theta)}")
    c1, c2 = ring.chern_w()
    lhs = (1 + c1 + c2) * (1 + ring.a + ring.H)
    if lhs.truncate(2) != ((1 + ring.H) ** 4).truncate(2):
        diffs.append(f"c(W)(1+a+H) = {lhs.truncate(2)} in degrees <= 2")
    diffs += check_pairing()
    return diffs


def check_pairing() -> list[str]:
    import sympy

    g = ring.pairing_matrix()
    diffs = []
    for k in range(ring.DIM + 1):
        rows = [BASIS.index(m) for m in ring.basis_of_degree(k)]
        cols = [BASIS.index(m) for m in ring.basis_of_degree(ring.DIM - k)]
        block = sympy.Matrix([[g[p][q] for q in cols] for p in rows])
        if block.rows != block.cols or block.det() == 0:
            diffs.append(f"pairing block ({k}, {ring.DIM - k}) is singular")
    return diffs


def random_wdvv_configuration(rng: random.Random, max_degree: int = 2):
    """Four special monomials and extras with total degree 3d + n + 1.

    Sampling leans towards H-type classes; pure a-powers mostly give trivial zeros.
    """
    nonunit = [m for m in BASIS if degree(m) >= 1]
    weights = [4 if m in ((0, 1), (0, 2), (1, 1), (1, 2)) else 1 for m in nonunit]
    while True:
        d = rng.randint(0, max_degree)
        n_extra = rng.randint(0, 3 * d + 2)
        mons = rng.choices(nonunit, weights=weights, k=3 + n_extra)
        need = 3 * d + (4 + n_extra) + 1 - sum(map(degree, mons))
        last = [m for m in nonunit if degree(m) == need]
        if last:
            mons.append(rng.choice(last))
            rng.shuffle(mons)
            return d, [RingClass({m: 1}) for m in mons[:4]], [RingClass({m: 1}) for m in mons[4:]]


def check_engine(calc: Tautological, samples: int = 100, seed: int = 1) -> list[str]:
    engine = calc.base.engine
    rng = random.Random(seed)
    diffs = []
    nontrivial = 0
    while nontrivial < samples:
        d, special, extras = random_wdvv_configuration(rng)
        res = engine.wdvv_residual(d, *special, extras)
        if res != 0:
            diffs.append(f"WDVV residual {res} at d={d} {special} + {extras}")
        nontrivial += engine._wdvv_side(d, *special, tuple(extras)) != 0
    for _ in range(samples):
        d = rng.randint(1, 3)
        key = _random_on_shell(rng, d)
        with_h = engine.invariant(d, key + ((0, 1),))
        if with_h != d * engine.invariant(d, key):
            diffs.append(f"divisor axiom fails at d={d} {key}")
        perm = list(key)
        rng.shuffle(perm)
        if engine.invariant(d, perm) != engine.invariant(d, key):
            diffs.append(f"insertion order matters at d={d} {key}")
    return diffs


def _random_on_shell(rng: random.Random, d: int) -> tuple:
    """Random on-shell list of degree >= 2 monomials (sum deg = 3d + n + 2)."""
    cands = [m for m in BASIS if degree(m) >= 2]
    while True:
        n = rng.randint(2, 3 * d + 4)
        mons = [rng.choice(cands) for _ in range(n)]
        if sum(map(degree, mons)) == 3 * d + n + 2:
            return tuple(mons)


def check_integrality(calc: Tautological, max_degree: int) -> list[str]:
    diffs = []
    for d in range(2, max_degree + 1):
        for r, s in valid_pairs(d):
            res = cusp_count(d, r, s, calc)
            if res.euler - res.boundary != res.count:
                diffs.append(f"C_{d}({r},{s}) inconsistent")
    return diffs


def run_suite(calc: Tautological, max_degree: int = 4) -> list[CheckResult]:
    if max_degree < 2:
        raise ValueError("verify needs max_degree >= 2")
    return [
        _run(f"known counts through d={max_degree}", lambda: check_known_counts(calc, max_degree)),
        _run("d=1 Schubert oracle", lambda: check_oracle(calc)),
        _run("off-shell gates", lambda: check_gates(calc, max_degree)),
        _run("algebraic identities", lambda: check_identities(calc, max_degree)),
        _run("engine self-consistency", lambda: check_engine(calc)),
        _run(f"integral counts through d={max_degree}", lambda: check_integrality(calc, max_degree)),
    ]
