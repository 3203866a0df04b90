"""Formula-versus-oracle sweeps over sparse paving matroids."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import matroid_oracle as oracle
from . import sparse_paving
from .bounds import best_bound, iter_independent_sets, johnson_vertices
from .exactmath import IntPolynomial, popcount
from .sparse_paving import SparsePavingMatroid

EXHAUSTIVE_GROUND = 7
ORACLE_GROUND = 9


def exhaustive_families(m: int, d: int) -> Iterator[SparsePavingMatroid]:
    """Every valid S_{m,d}(CH), one per circuit-hyperplane family."""
    if m == 0 or d == 0:
        yield SparsePavingMatroid(m, d)
        return
    for family in iter_independent_sets(m + d, d):
        yield SparsePavingMatroid(m, d, tuple(sorted(family)))


def random_families(m: int, d: int, samples: int, seed: int) -> list[SparsePavingMatroid]:
    """``samples`` seeded random families (repeats possible when few families exist)."""
    if m == 0 or d == 0:
        return [SparsePavingMatroid(m, d)] * samples
    rng = random.Random(f"{seed}:{m}:{d}")
    vertices = johnson_vertices(m + d, d)
    cap = best_bound(m, d)
    out = []
    for _ in range(samples):
        target = rng.randint(0, cap)
        rng.shuffle(vertices)
        chosen: list[int] = []
        for v in vertices:
            if len(chosen) >= target:
                break
            if all(popcount(v ^ w) >= 4 for w in chosen):
                chosen.append(v)
        out.append(SparsePavingMatroid(m, d, tuple(sorted(chosen))))
    return out


@dataclass
class Mismatch:
    what: str
    matroid: SparsePavingMatroid
    formula: list[int]
    oracle: list[int]

    def to_dict(self) -> dict:
        return {
            "check": self.what,
            "witness": {"m": self.matroid.m, "d": self.matroid.d, "ch": self.matroid.ch_lists()},
            "formula": self.formula,
            "oracle": self.oracle,
        }


def check_instance(
    M: SparsePavingMatroid,
    kl_formula: Callable[[int, int, int], IntPolynomial] | None = None,
    check_charpoly: bool = True,
) -> Mismatch | None:
    kl_formula = kl_formula or sparse_paving.kl_polynomial
    G = oracle.from_sparse_paving(M)
    want = oracle.kl_polynomial(G)
    got = kl_formula(M.m, M.d, M.c)
    if got != want:
        return Mismatch("kl_polynomial", M, got.to_list(), want.to_list())
    # the closed form for chi assumes d >= 1; at d = 0 every element is a loop
    if check_charpoly and M.d >= 1:
        want_chi = oracle.characteristic_polynomial(G)
        got_chi = sparse_paving.characteristic_polynomial(M.m, M.d, M.c)
        if got_chi != want_chi:
            return Mismatch("characteristic_polynomial", M, got_chi.to_list(), want_chi.to_list())
    return None


@dataclass
class SweepResult:
    checked: int = 0
    per_ground: dict[int, int] = field(default_factory=dict)
    mismatch: Mismatch | None = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def instances(max_ground: int, samples: int, seed: int) -> Iterator[SparsePavingMatroid]:
    """Exhaustive families for ground sets up to 7, seeded samples for 8 and 9."""
    top = min(max_ground, ORACLE_GROUND)
    for n in range(0, top + 1):
        for d in range(0, n + 1):
            m = n - d
            if n <= EXHAUSTIVE_GROUND:
                yield from exhaustive_families(m, d)
            else:
                yield from random_families(m, d, samples, seed)


def sweep(
    max_ground: int = EXHAUSTIVE_GROUND,
    samples: int = 50,
    seed: int = 0,
    kl_formula: Callable[[int, int, int], IntPolynomial] | None = None,
    check_charpoly: bool = True,
) -> SweepResult:
    """Stop at the first mismatch; otherwise count every instance checked."""
    result = SweepResult()
    for M in instances(max_ground, samples, seed):
        bad = check_instance(M, kl_formula, check_charpoly)
        result.checked += 1
        result.per_ground[M.n] = result.per_ground.get(M.n, 0) + 1
        if bad is not None:
            result.mismatch = bad
            break
    return result
