"""Brute-force matroid engine used as ground truth.

Matroids are given by their bases.  Everything else (rank, closure, flats,
Möbius function, characteristic polynomial, minors, KL polynomial) is
computed from that list with no knowledge of sparse paving structure.
Subsets are 0-based bitmasks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from . import kernels
from .errors import DomainError, InvariantViolation, ResourceCapError
from .exactmath import IntPolynomial, from_mask, popcount, reciprocal_shift, to_mask

LATTICE_CAP = 16
KL_CAP = 12
EXCHANGE_CHECK_CAP = 12


@dataclass(frozen=True, eq=False)
class GeneralMatroid:
    n: int
    bases: frozenset
    r: int

    def __eq__(self, other):
        if not isinstance(other, GeneralMatroid):
            return NotImplemented
        return self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def basis_array(self) -> np.ndarray:
        return np.array(sorted(self.bases), dtype=np.int64)

    @cached_property
    def rank_table(self) -> np.ndarray:
        if self.n > LATTICE_CAP:
            raise ResourceCapError(f"ground set of size {self.n} exceeds cap {LATTICE_CAP}")
        return kernels.rank_table(self.basis_array, self.n)

    def rank(self, S: int) -> int:
        """Largest intersection of ``S`` with a basis."""
        if self.n <= LATTICE_CAP:
            return int(self.rank_table[S])
        return max(popcount(S & B) for B in self.bases)

    def closure(self, S: int) -> int:
        r = self.rank(S)
        out = S
        for e in range(self.n):
            bit = 1 << e
            if not S & bit and self.rank(S | bit) == r:
                out |= bit
        return out

    def is_flat(self, S: int) -> bool:
        return S & ~self.ground == 0 and self.closure(S) == S

    @property
    def loops(self) -> int:
        return self.closure(0)


def from_bases(n: int, bases: Iterable[Iterable[int]]) -> GeneralMatroid:
    """Matroid on ``[n]`` from bases given as 1-based element lists."""
    return from_masks(n, [to_mask(B) for B in bases])


def from_masks(n: int, masks: Iterable[int], check_exchange: bool | None = None) -> GeneralMatroid:
    masks = frozenset(int(x) for x in masks)
    if n < 0:
        raise DomainError(f"ground-set size must be non-negative, got {n}")
    if not masks:
        raise DomainError("a matroid needs at least one basis")
    ground = (1 << n) - 1
    sizes = {popcount(B) for B in masks}
    if len(sizes) != 1:
        raise DomainError(f"bases have unequal sizes {sorted(sizes)}")
    for B in masks:
        if B & ~ground:
            raise DomainError(f"basis {list(from_mask(B))} is not inside [{n}]")
    if check_exchange is None:
        check_exchange = n <= EXCHANGE_CHECK_CAP
    if check_exchange:
        _check_exchange(masks)
    return GeneralMatroid(n, masks, sizes.pop())


def _check_exchange(bases: frozenset) -> None:
    for A in bases:
        for B in bases:
            diff = A & ~B
            while diff:
                a = diff & -diff
                diff ^= a
                cand = B & ~A
                ok = False
                while cand:
                    b = cand & -cand
                    cand ^= b
                    if (A ^ a) | b in bases:
                        ok = True
                        break
                if not ok:
                    raise DomainError(
                        "basis exchange fails for "
                        f"{list(from_mask(A))}, {list(from_mask(B))} at element {a.bit_length()}"
                    )


def from_sparse_paving(M) -> GeneralMatroid:
    """Bases = every d-subset except the circuit-hyperplanes."""
    if M.n > LATTICE_CAP:
        raise ResourceCapError(f"ground set of size {M.n} exceeds cap {LATTICE_CAP}")
    return from_masks(M.n, M.bases(), check_exchange=False)


# -- lattice of flats ------------------------------------------------------------


@dataclass(frozen=True)
class FlatLattice:
    flats: np.ndarray  # sorted by (rank, mask); flats[0] is the bottom
    ranks: np.ndarray
    mobius: np.ndarray  # mobius[i, j] = mu(flats[i], flats[j])

    @property
    def bottom_mobius(self) -> np.ndarray:
        return self.mobius[0]

    def __len__(self) -> int:
        return len(self.flats)

    def by_rank(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for F, r in zip(self.flats.tolist(), self.ranks.tolist()):
            out.setdefault(r, []).append(F)
        return out

    def index(self, F: int) -> int:
        hits = np.flatnonzero(self.flats == F)
        if len(hits) == 0:
            raise DomainError(f"{list(from_mask(F))} is not a flat")
        return int(hits[0])


def flat_lattice(M: GeneralMatroid) -> FlatLattice:
    return _lattice(M.n, M.bases)


@lru_cache(maxsize=4096)
def _lattice(n: int, bases: frozenset) -> FlatLattice:
    if n > LATTICE_CAP:
        raise ResourceCapError(f"ground set of size {n} exceeds cap {LATTICE_CAP}")
    rank = kernels.rank_table(np.array(sorted(bases), dtype=np.int64), n)
    closed = np.flatnonzero(kernels.closed_sets(rank, n)).astype(np.int64)
    franks = rank[closed].astype(np.int64)
    order = np.lexsort((closed, franks))
    flats, franks = closed[order], franks[order]
    mu = kernels.mobius_matrix(flats)
    return FlatLattice(flats, franks, mu)


def characteristic_polynomial(M: GeneralMatroid) -> IntPolynomial:
    """Möbius sum over the lattice of flats; the zero polynomial when ``M`` has a loop."""
    if M.loops:
        return IntPolynomial()
    L = flat_lattice(M)
    coeffs = [0] * (M.r + 1)
    for mu, rk in zip(L.bottom_mobius.tolist(), L.ranks.tolist()):
        coeffs[M.r - rk] += mu
    return IntPolynomial(coeffs)


def characteristic_polynomial_by_subsets(M: GeneralMatroid) -> IntPolynomial:
    """``sum_S (-1)^|S| t^(r - rank S)`` over all subsets; an independent route to chi."""
    rank = M.rank_table.astype(np.int64)
    subsets = np.arange(1 << M.n, dtype=np.int64)
    sign = 1 - 2 * (np.bitwise_count(subsets) & 1).astype(np.int64)
    coeffs = np.zeros(M.r + 1, dtype=np.int64)
    np.add.at(coeffs, M.r - rank, sign)
    return IntPolynomial(int(c) for c in coeffs)


# -- minors ----------------------------------------------------------------------


def _require_flat(M: GeneralMatroid, F: int) -> None:
    if not M.is_flat(F):
        raise DomainError(f"{list(from_mask(F))} is not a flat")


def _relabel(masks, keep: int) -> list[int]:
    return [int(x) for x in kernels.compress_bits(list(masks), keep)]


def restrict(M: GeneralMatroid, F: int) -> GeneralMatroid:
    """Localization at the flat ``F``, relabeled onto ``0..|F|-1`` in order."""
    _require_flat(M, F)
    rF = M.rank(F)
    pieces = {B & F for B in M.bases if popcount(B & F) == rF}
    return from_masks(popcount(F), _relabel(pieces, F), check_exchange=False)


def contract(M: GeneralMatroid, F: int) -> GeneralMatroid:
    """Contraction by the flat ``F``, relabeled onto ``0..n-|F|-1`` in order."""
    _require_flat(M, F)
    rF = M.rank(F)
    basis_of_F = min(B & F for B in M.bases if popcount(B & F) == rF)
    rest = M.ground & ~F
    pieces = {B & rest for B in M.bases if B & F == basis_of_F}
    return from_masks(popcount(rest), _relabel(pieces, rest), check_exchange=False)


# -- Kazhdan-Lusztig polynomial ------------------------------------------------------


def kl_polynomial(M: GeneralMatroid) -> IntPolynomial:
    """KL polynomial from the defining recurrence over flats.

    Loops do not change the lattice of flats, so they are deleted first.
    Every upper interval [F, E] of the lattice is the lattice of the
    contraction M_F, so one pass over the lattice yields P for all of them;
    each one is substituted back into the recurrence before returning.
    """
    if M.n > KL_CAP:
        raise ResourceCapError(f"KL oracle is capped at {KL_CAP} elements, got {M.n}")
    return _kl_cached(M.n, M.bases)


@lru_cache(maxsize=65536)
def _kl_cached(n: int, bases: frozenset) -> IntPolynomial:
    M = GeneralMatroid(n, bases, popcount(next(iter(bases))))
    M = _without_loops(M)
    L = flat_lattice(M)
    P, R = kernels.kl_lattice(L.flats, L.ranks, L.mobius)
    _check_recurrence(L, P, R)
    return IntPolynomial(int(c) for c in P[0])


def check_kl_recurrence(M: GeneralMatroid) -> IntPolynomial:
    """Recompute P(M) without the cache and substitute every interval back into the recurrence.

    Raises :class:`InvariantViolation` on any failure; returns P(M).
    """
    if M.n > KL_CAP:
        raise ResourceCapError(f"KL oracle is capped at {KL_CAP} elements, got {M.n}")
    M = _without_loops(M)
    L = _lattice.__wrapped__(M.n, M.bases)
    P, R = kernels.kl_lattice(L.flats, L.ranks, L.mobius)
    _check_recurrence(L, P, R)
    return IntPolynomial(int(c) for c in P[0])


def _check_recurrence(L: FlatLattice, P: np.ndarray, R: np.ndarray) -> None:
    top = int(L.ranks[-1])
    for f in range(len(L)):
        k = top - int(L.ranks[f])
        p = IntPolynomial(int(c) for c in P[f])
        if k > 0 and 2 * p.degree >= k:
            raise InvariantViolation(f"degree {p.degree} of P for an interval of rank {k} is too large")
        if p[0] != 1:
            raise InvariantViolation(f"constant term {p[0]} != 1 for an interval of rank {k}")
        lhs = reciprocal_shift(p, k) - p
        rhs = IntPolynomial(int(c) for c in R[f])
        if lhs != rhs:
            raise InvariantViolation(f"recurrence fails on an interval of rank {k}: {lhs} != {rhs}")


def recurrence_by_minors(M: GeneralMatroid) -> tuple[IntPolynomial, IntPolynomial]:
    """Both sides of ``t^rk P(1/t) = sum_F chi(M^F) P(M_F)`` using explicit minor matroids.

    This builds every localization and contraction as its own matroid, so it
    checks :func:`kl_polynomial` against a route that never reads intervals
    of a shared lattice.
    """
    M = _without_loops(M)
    P = kl_polynomial(M)
    lhs = reciprocal_shift(P, M.r)
    rhs = IntPolynomial()
    for F in flat_lattice(M).flats.tolist():
        rhs = rhs + characteristic_polynomial(restrict(M, F)) * kl_polynomial(contract(M, F))
    return lhs, rhs


def _without_loops(M: GeneralMatroid) -> GeneralMatroid:
    loops = M.loops
    if not loops:
        return M
    keep = M.ground & ~loops
    return from_masks(popcount(keep), _relabel(M.bases, keep), check_exchange=False)


def uniform(m: int, d: int) -> GeneralMatroid:
    """U_{m,d}: every d-subset of [m + d] is a basis."""
    n = m + d
    masks = [sum(1 << e for e in combo) for combo in itertools.combinations(range(n), d)]
    return from_masks(n, masks, check_exchange=False)


def direct_sum(A: GeneralMatroid, B: GeneralMatroid) -> GeneralMatroid:
    masks = [a | (b << A.n) for a in A.bases for b in B.bases]
    return from_masks(A.n + B.n, masks, check_exchange=False)
