"""Upper bounds on the number of circuit-hyperplanes, and Johnson-graph search.

A circuit-hyperplane family of a rank-``d`` sparse paving matroid on ``m + d``
elements is exactly an independent set of the Johnson graph J(m+d, d): the
vertices are the d-subsets and two are adjacent when their symmetric
difference has size 2.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError, ResourceCapError
from .exactmath import binomial, from_mask, popcount

EXACT_VERTEX_CAP = 256
GREEDY_RESTARTS = 200


def coding_bound_exact(m: int, d: int) -> Fraction:
    return Fraction(binomial(m + d, d), m + 1)


def johnson_bound_exact(m: int, d: int) -> Fraction:
    return Fraction(2 * binomial(m + d, d), m + d + 2)


def coding_bound(m: int, d: int) -> int:
    """floor(C(m+d, d) / (m+1))."""
    _check_md(m, d)
    return binomial(m + d, d) // (m + 1)


def johnson_bound(m: int, d: int) -> int:
    """floor(2 C(m+d, d) / (m+d+2))."""
    _check_md(m, d)
    return 2 * binomial(m + d, d) // (m + d + 2)


def best_bound(m: int, d: int) -> int:
    return min(coding_bound(m, d), johnson_bound(m, d))


def refined_bound(m: int, d: int) -> int:
    """:func:`best_bound` tightened by the small cases that need sharper arguments.

    * ``m == 0``: the only d-subset is the whole ground set, so no family.
    * ``m == 1``: any two d-subsets of [d+1] differ in exactly two places.
    * ``m == 2``: complements are disjoint pairs in [d+2].
    * ``m == d == 3``: the independence number of J(6, 3) is 4.
    """
    bound = best_bound(m, d)
    if m == 0:
        return 0
    if m == 1:
        return min(bound, 1)
    if m == 2:
        return min(bound, (d + 2) // 2)
    if m == 3 and d == 3:
        return min(bound, 4)
    return bound


@dataclass(frozen=True)
class BoundReport:
    m: int
    d: int
    coding_bound: int
    johnson_bound: int
    best: int
    exact: int | None = None
    witness: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {
            "m": self.m,
            "d": self.d,
            "coding_bound": self.coding_bound,
            "johnson_bound": self.johnson_bound,
            "best": self.best,
            "exact": self.exact,
        }
        if self.witness is not None:
            out["witness"] = [list(w) for w in self.witness]
        return out


def bound_report(m: int, d: int, exact: bool = False) -> BoundReport:
    cb, jb = coding_bound(m, d), johnson_bound(m, d)
    size = witness = None
    if exact:
        size, family = max_independent_set_exact(m + d, d)
        witness = tuple(from_mask(v) for v in family)
    return BoundReport(m, d, cb, jb, min(cb, jb), size, witness)


def _check_md(m: int, d: int) -> None:
    if m < 0 or d < 0:
        raise DomainError(f"m and d must be non-negative, got m={m}, d={d}")


# -- Johnson graph ------------------------------------------------------------


def johnson_graph_adjacent(a: int, b: int) -> bool:
    """Adjacency in J(n, d) for two equal-size subsets given as bitmasks."""
    return popcount(a ^ b) == 2


def johnson_vertices(n: int, d: int) -> list[int]:
    """The d-subsets of [n] as bitmasks, in lexicographic order of their elements."""
    return [sum(1 << e for e in combo) for combo in itertools.combinations(range(n), d)]


def _adjacency_bits(vertices: list[int]) -> list[int]:
    v = np.asarray(vertices, dtype=np.int64)
    adj = np.bitwise_count(v[:, None] ^ v[None, :]) == 2
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in adj]


def iter_independent_sets(n: int, d: int, size: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every independent set of J(n, d) (optionally of one size), as sorted mask tuples."""
    vertices = johnson_vertices(n, d)
    adj = _adjacency_bits(vertices)
    N = len(vertices)

    def rec(start: int, allowed: int, chosen: list[int]):
        if size is None or len(chosen) == size:
            yield tuple(chosen)
            if size is not None:
                return
        for v in range(start, N):
            if (allowed >> v) & 1:
                chosen.append(vertices[v])
                yield from rec(v + 1, allowed & ~adj[v] & ~(1 << v), chosen)
                chosen.pop()

    yield from rec(0, (1 << N) - 1, [])


def canonical_family(n: int, family) -> tuple[int, ...]:
    """Smallest relabeling of a family of subsets of [n] under all permutations of [n]."""
    family = list(family)
    best = None
    for perm in itertools.permutations(range(n)):
        image = []
        for mask in family:
            out = 0
            for e in range(n):
                if (mask >> e) & 1:
                    out |= 1 << perm[e]
            image.append(out)
        key = tuple(sorted(image))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def max_independent_set_exact(n: int, d: int) -> tuple[int, tuple[int, ...]]:
    """Independence number of J(n, d) and one maximum family (bitmasks).

    Branch and bound over bitsets: candidates are greedily partitioned into
    cliques (each clique holds at most one chosen vertex), which bounds the
    achievable size.  Vertex-transitivity lets the search pin vertex 0.
    """
    if d < 0 or d > n:
        raise DomainError(f"need 0 <= d <= n, got n={n}, d={d}")
    N = binomial(n, d)
    if N > EXACT_VERTEX_CAP:
        raise ResourceCapError(
            f"J({n},{d}) has {N} vertices (cap {EXACT_VERTEX_CAP}); use greedy_family instead"
        )
    vertices = johnson_vertices(n, d)
    adj = _adjacency_bits(vertices)
    order = sorted(range(N), key=lambda v: (-adj[v].bit_count(), v))
    best: list[int] = []

    def clique_cover_bound(cand: int) -> int:
        cliques = 0
        rest = cand
        while rest:
            cliques += 1
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            pool = rest & adj[v]
            while pool:
                u = (pool & -pool).bit_length() - 1
                clique |= 1 << u
                pool &= adj[u]
            rest &= ~clique
        return cliques

    def search(chosen: list[int], cand: int):
        nonlocal best
        if not cand:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + clique_cover_bound(cand) <= len(best):
            return
        for v in order:
            if not (cand >> v) & 1:
                continue
            chosen.append(v)
            search(chosen, cand & ~adj[v] & ~(1 << v))
            chosen.pop()
            cand &= ~(1 << v)
            if len(chosen) + clique_cover_bound(cand) <= len(best):
                return

    first = 0
    search([first], ((1 << N) - 1) & ~adj[first] & ~1)
    family = tuple(sorted(vertices[v] for v in best))
    return len(best), family


def greedy_family(
    m: int, d: int, target: int, seed: int = 0, restarts: int = GREEDY_RESTARTS
) -> tuple[int, ...] | None:
    """A random valid circuit-hyperplane family of the requested size, or ``None``.

    ``None`` after ``restarts`` failed attempts does not prove no such family exists.
    """
    if target < 0:
        raise DomainError(f"target must be non-negative, got {target}")
    if target > best_bound(m, d):
        raise DomainError(f"target {target} exceeds the bound {best_bound(m, d)} for m={m}, d={d}")
    if target == 0:
        return ()
    if m == 0:
        return None
    rng = random.Random(seed)
    vertices = johnson_vertices(m + d, d)
    for _ in range(restarts):
        rng.shuffle(vertices)
        chosen: list[int] = []
        for v in vertices:
            if all(popcount(v ^ w) >= 4 for w in chosen):
                chosen.append(v)
                if len(chosen) == target:
                    return tuple(sorted(chosen))
    return None
