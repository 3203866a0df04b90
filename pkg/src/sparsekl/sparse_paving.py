"""Sparse paving matroids S_{m,d}(CH) and their KL polynomials from skew tableaux.

``m`` is the corank, ``d`` the rank, the ground set is ``[m + d]`` and ``CH``
is the family of circuit-hyperplanes (the non-bases), stored as sorted
0-based bitmasks.  The KL coefficient formula only sees ``c = |CH|``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .bounds import best_bound
from .errors import DomainError, ResourceCapError
from .exactmath import IntPolynomial, binomial, from_mask, popcount, to_mask
from .tableaux import count_bar_skyt, count_skyt

GROUND_CAP = 16


@dataclass(frozen=True)
class SparsePavingMatroid:
    m: int
    d: int
    ch: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.m + self.d

    @property
    def c(self) -> int:
        return len(self.ch)

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_masks(cls, m: int, d: int, masks: Iterable[int]) -> "SparsePavingMatroid":
        return _build(m, d, [int(x) for x in masks])

    def ch_lists(self) -> list[list[int]]:
        """CH as 1-based element lists (the I/O form)."""
        return [list(from_mask(x)) for x in self.ch]

    def bases(self) -> list[int]:
        if self.n > GROUND_CAP:
            raise ResourceCapError(f"ground set of size {self.n} exceeds cap {GROUND_CAP}")
        non_bases = set(self.ch)
        return [
            mask
            for mask in (sum(1 << e for e in combo) for combo in itertools.combinations(range(self.n), self.d))
            if mask not in non_bases
        ]

    def kl_coefficient(self, i: int) -> int:
        return kl_coefficient(self.m, self.d, self.c, i)

    def kl_polynomial(self) -> IntPolynomial:
        return kl_polynomial(self.m, self.d, self.c)

    def characteristic_polynomial(self) -> IntPolynomial:
        return characteristic_polynomial(self.m, self.d, self.c)


def validate(m: int, d: int, ch: Iterable[Iterable[int]] = ()) -> SparsePavingMatroid:
    """Build S_{m,d}(CH) from 1-based element lists, checking every invariant."""
    return _build(m, d, [to_mask(members) for members in ch])


def _build(m: int, d: int, masks: list[int]) -> SparsePavingMatroid:
    if m < 0 or d < 0:
        raise DomainError(f"m and d must be non-negative, got m={m}, d={d}")
    n = m + d
    ground = (1 << n) - 1
    for x in masks:
        if x < 0 or x & ~ground:
            raise DomainError(f"circuit-hyperplane {list(from_mask(x))} is not inside [{n}]")
        if popcount(x) != d:
            raise DomainError(f"circuit-hyperplane {list(from_mask(x))} does not have size d={d}")
    if len(set(masks)) != len(masks):
        raise DomainError("circuit-hyperplane family contains a repeated set")
    if m == 0 and masks:
        raise DomainError("m = 0 forces an empty circuit-hyperplane family")
    if d == 0 and masks:
        raise DomainError("d = 0 admits no circuit-hyperplanes (the empty set is the only basis)")
    ordered = sorted(masks)
    for x, y in itertools.combinations(ordered, 2):
        if popcount(x ^ y) < 4:
            raise DomainError(
                f"|{list(from_mask(x))} △ {list(from_mask(y))}| = {popcount(x ^ y)} < 4"
            )
    return SparsePavingMatroid(m, d, tuple(ordered))


# -- the tableau formula -------------------------------------------------------


def _check_c(m: int, d: int, c: int, unchecked: bool) -> None:
    if c < 0:
        raise DomainError(f"|CH| must be non-negative, got {c}")
    if unchecked:
        return
    if m == 0 and c:
        raise DomainError("m = 0 forces |CH| = 0")
    bound = best_bound(m, d)
    if c > bound:
        raise DomainError(f"|CH| = {c} exceeds the upper bound {bound} for m={m}, d={d}")


def kl_coefficient(m: int, d: int, c: int, i: int, *, unchecked: bool = False) -> int:
    """i-th KL coefficient of any S_{m,d}(CH) with |CH| = c.

    ``skyt(m+1, i, d-2i+1) - c * bar_skyt(i, d-2i+1)``, which is 1 at ``i = 0``
    and 0 once ``i >= d/2`` (for ``i > 0``).  Values of ``c`` above
    :func:`~sparsekl.bounds.best_bound` are refused unless ``unchecked``.
    """
    if m < 0 or d < 0 or i < 0:
        raise DomainError(f"need m, d, i >= 0, got m={m}, d={d}, i={i}")
    _check_c(m, d, c, unchecked)
    b = d - 2 * i + 1
    if b < 0:
        return 0
    return count_skyt(m + 1, i, b) - c * count_bar_skyt(i, b)


def kl_polynomial(m: int, d: int, c: int, *, unchecked: bool = False) -> IntPolynomial:
    if m < 0 or d < 0:
        raise DomainError(f"need m, d >= 0, got m={m}, d={d}")
    _check_c(m, d, c, unchecked)
    if d == 0:
        return IntPolynomial.constant(1)
    return IntPolynomial(kl_coefficient(m, d, c, i, unchecked=True) for i in range((d + 1) // 2))


def characteristic_polynomial(m: int, d: int, c: int, *, unchecked: bool = False) -> IntPolynomial:
    if m < 0 or d < 0:
        raise DomainError(f"need m, d >= 0, got m={m}, d={d}")
    _check_c(m, d, c, unchecked)
    if d == 0:
        return IntPolynomial.constant(1)
    n = m + d
    sign = -1 if d % 2 else 1
    coeffs = [0] * (d + 1)
    for i in range(d - 1):
        coeffs[d - i] += (-1) ** i * binomial(n, i)
    coeffs[1] += -sign * (binomial(n, d - 1) - c)
    coeffs[0] += sign * (binomial(n - 1, d - 1) - c)
    return IntPolynomial(coeffs)


def uniform_characteristic_polynomial(m: int, d: int) -> IntPolynomial:
    if m < 0 or d < 1:
        raise DomainError(f"need m >= 0 and d >= 1, got m={m}, d={d}")
    n = m + d
    coeffs = [0] * (d + 1)
    coeffs[0] += (-1) ** d * binomial(n - 1, d - 1)
    for i in range(d):
        coeffs[d - i] += (-1) ** i * binomial(n, i)
    return IntPolynomial(coeffs)


# -- flats and minors ----------------------------------------------------------


def flats(M: SparsePavingMatroid) -> dict[int, list[int]]:
    """Flats grouped by rank, each rank's flats as sorted bitmasks."""
    if M.n > GROUND_CAP:
        raise ResourceCapError(f"ground set of size {M.n} exceeds cap {GROUND_CAP}")
    by_rank: dict[int, list[int]] = {}
    for size in range(max(M.d - 1, 0)):
        by_rank[size] = sorted(
            sum(1 << e for e in combo) for combo in itertools.combinations(range(M.n), size)
        )
    if M.d >= 1:
        hyper = [
            mask
            for mask in (sum(1 << e for e in combo) for combo in itertools.combinations(range(M.n), M.d - 1))
            if not any(mask & ~C == 0 for C in M.ch)
        ]
        by_rank[M.d - 1] = sorted(hyper + list(M.ch))
    by_rank.setdefault(M.d, []).append(M.ground)
    return by_rank


def is_flat(M: SparsePavingMatroid, F: int) -> bool:
    size = popcount(F)
    if F == M.ground:
        return True
    if F in M.ch:
        return True
    if size <= M.d - 2:
        return True
    if size == M.d - 1:
        return not any(F & ~C == 0 for C in M.ch)
    return False


@dataclass(frozen=True)
class MinorDescriptor:
    """Isomorphism type of a localization or contraction.

    ``kind`` is ``"uniform"`` (U_{m,d}), ``"sparse_paving"`` (S_{m,d}(ch) with
    nonempty ``ch``) or ``"boolean"`` (U_{0,d}, a free matroid).  ``ch`` is on
    the minor's own ground set, relabeled to ``0..m+d-1`` in order.
    """

    kind: str
    m: int
    d: int
    ch: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.m + self.d

    def bases(self) -> list[int]:
        return SparsePavingMatroid(self.m, self.d, self.ch).bases()


def _tag(m: int, d: int, ch=()) -> MinorDescriptor:
    if ch:
        return MinorDescriptor("sparse_paving", m, d, tuple(sorted(ch)))
    if m == 0:
        return MinorDescriptor("boolean", 0, d)
    return MinorDescriptor("uniform", m, d)


def _require_flat(M: SparsePavingMatroid, F: int) -> None:
    if F & ~M.ground or not is_flat(M, F):
        raise DomainError(f"{list(from_mask(F))} is not a flat of S_{{{M.m},{M.d}}}")


def localize(M: SparsePavingMatroid, F: int) -> MinorDescriptor:
    """Isomorphism type of the restriction to the flat ``F``."""
    _require_flat(M, F)
    if F == M.ground:
        return _tag(M.m, M.d, M.ch)
    if F in M.ch:
        return _tag(1, M.d - 1)
    return _tag(0, popcount(F))


def contract(M: SparsePavingMatroid, F: int) -> MinorDescriptor:
    """Isomorphism type of the contraction by the flat ``F``."""
    _require_flat(M, F)
    size = popcount(F)
    if F == 0:
        return _tag(M.m, M.d, M.ch)
    if F == M.ground:
        return _tag(0, 0)
    if F in M.ch:
        return _tag(M.m - 1, 1)
    rest = M.ground & ~F
    sub = [C for C in M.ch if F & ~C == 0]
    if sub:
        relabeled = [int(x) for x in kernels.compress_bits([C & ~F for C in sub], rest)]
        return _tag(M.m, M.d - size, relabeled)
    return _tag(M.m, M.d - size)
