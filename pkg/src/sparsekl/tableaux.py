"""Skew tableaux Skyt(a, i, b): the shape, legal fillings, and closed-form counts.

The shape has a left column of height ``a``, then ``i - 1`` columns of height
2 sitting on the top two rows of the left column, then a right column of
height ``b`` whose *bottom* two cells sit on that same two-row band (so it
sticks upward).  Rows are numbered downward with the band occupying rows 0
and 1; the right column therefore spans rows ``2 - b .. 1``.

Cells are ordered column-major, left to right, each column top to bottom.
Fillings are stored as the tuple of entries in that order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, InvariantViolation, ResourceCapError
from .exactmath import binomial, exact_div, falling_factorial

DEFAULT_CELL_CAP = 16


@dataclass(frozen=True)
class SkytShape:
    a: int
    i: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2 or self.i < 1:
            raise DomainError(
                f"Skyt({self.a},{self.i},{self.b}) is only a shape for a, b >= 2 and i >= 1"
            )

    @property
    def ncells(self) -> int:
        return self.a + self.b + 2 * self.i - 2

    @property
    def right(self) -> int:
        """Column index of the right-most column."""
        return self.i

    @cached_property
    def cells(self) -> tuple[tuple[int, int], ...]:
        """``(row, col)`` of every cell in column-major order."""
        out = [(r, 0) for r in range(self.a)]
        for col in range(1, self.i):
            out += [(0, col), (1, col)]
        out += [(r, self.i) for r in range(2 - self.b, 2)]
        return tuple(out)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {cell: k for k, cell in enumerate(self.cells)}

    @cached_property
    def predecessors(self) -> tuple[int, ...]:
        """Bitmask of the cells directly above and directly left of each cell."""
        pred = []
        for r, c in self.cells:
            mask = 0
            for nb in ((r - 1, c), (r, c - 1)):
                k = self.index.get(nb)
                if k is not None:
                    mask |= 1 << k
            pred.append(mask)
        return tuple(pred)

    def column(self, col: int) -> list[int]:
        """Cell indices of column ``col``, top to bottom."""
        return [k for k, (_, c) in enumerate(self.cells) if c == col]


@dataclass(frozen=True)
class SkytFilling:
    shape: SkytShape
    entries: tuple[int, ...]

    def column(self, col: int) -> tuple[int, ...]:
        return tuple(self.entries[k] for k in self.shape.column(col))

    def is_legal(self) -> bool:
        if sorted(self.entries) != list(range(1, self.shape.ncells + 1)):
            return False
        return all(
            self.entries[p] < self.entries[k]
            for k, mask in enumerate(self.shape.predecessors)
            for p in range(self.shape.ncells)
            if (mask >> p) & 1
        )

    def rows(self) -> list[str]:
        """Plain-text picture, one string per row (top row first)."""
        top = min(r for r, _ in self.shape.cells)
        bottom = max(r for r, _ in self.shape.cells)
        width = len(str(self.shape.ncells))
        lines = []
        for r in range(top, bottom + 1):
            parts = []
            for c in range(self.shape.i + 1):
                k = self.shape.index.get((r, c))
                parts.append(" " * width if k is None else str(self.entries[k]).rjust(width))
            lines.append(" ".join(parts).rstrip())
        return lines


def _check_cap(shape: SkytShape, cap: int) -> None:
    if shape.ncells > cap:
        raise ResourceCapError(
            f"Skyt({shape.a},{shape.i},{shape.b}) has {shape.ncells} cells; "
            f"too large to enumerate (cap {cap})"
        )


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def enumerate_skyt(a: int, i: int, b: int, cap: int = DEFAULT_CELL_CAP) -> list[SkytFilling]:
    """All legal fillings, sorted lexicographically by their column-major entries."""
    shape = SkytShape(a, i, b)
    _check_cap(shape, cap)
    rows = _sorted_rows(kernels.enumerate_linear_extensions(shape.predecessors, shape.ncells))
    return [SkytFilling(shape, tuple(int(v) for v in row)) for row in rows]


def enumerate_bar_skyt(i: int, b: int, cap: int = DEFAULT_CELL_CAP) -> list[SkytFilling]:
    """Fillings of Skyt(2, i, b) with 1 at the top of the left column."""
    return [f for f in enumerate_skyt(2, i, b, cap) if f.entries[0] == 1]


def count_skyt_fillings(a: int, i: int, b: int, cap: int = DEFAULT_CELL_CAP) -> int:
    """|Skyt(a, i, b)| by dynamic programming over filled cell sets (no closed form)."""
    shape = SkytShape(a, i, b)
    _check_cap(shape, cap)
    return kernels.count_linear_extensions(shape.predecessors, shape.ncells)


@lru_cache(maxsize=None)
def count_skyt(a: int, i: int, b: int) -> int:
    """skyt(a, i, b) from the alternating-sum formula, with the boundary conventions.

    ``i == 0`` gives 1; ``i > 0`` with ``a < 2`` or ``b < 2`` gives 0.
    """
    if min(a, i, b) < 0:
        raise DomainError(f"count_skyt needs non-negative arguments, got ({a},{i},{b})")
    if i == 0:
        return 1
    if a < 2 or b < 2:
        return 0
    total = Fraction(0)
    n = a + b + 2 * i - 2
    for k in range(b - 1):
        term = Fraction(
            binomial(n, b - 2 - k) * _fact(a + 2 * i + k) * (k + 1),
            (a + i + k) * _fact(i + k + 1),
        )
        total += term if k % 2 == 0 else -term
    total /= _fact(i) * _fact(a - 2) * (a + i - 1)
    if total.denominator != 1:
        raise InvariantViolation(f"skyt({a},{i},{b}) evaluated to non-integer {total}")
    return int(total)


@lru_cache(maxsize=None)
def count_skyt_positive(a: int, i: int, b: int) -> int:
    """skyt(a, i, b) from the subtraction-free sum, over a single common denominator.

    The individual summands are not integers, so the common-denominator
    numerators are accumulated and one exact division happens at the end.
    """
    if a < 2 or b < 2 or i < 1:
        raise DomainError(f"count_skyt_positive needs a, b >= 2 and i >= 1, got ({a},{i},{b})")
    numer = 0
    for k in range(b - 1):
        numer += (
            falling_factorial(b + i - k - 3, b - k - 2)
            * _fact(k + 1)
            * falling_factorial(b - 2, k)
            * falling_factorial(a + i + b - 2, b - k - 2)
        )
    numer *= binomial(a + i - 2, i) * binomial(a + b + 2 * i - 2, b + i - 1)
    denom = _fact(b - 2) * falling_factorial(a + i + b - 2, b - 1)
    return exact_div(numer, denom)


@lru_cache(maxsize=None)
def count_bar_skyt(i: int, b: int) -> int:
    """bar-skyt(i, b) from its single-term closed form.  0 when ``i == 0`` or ``b < 2``."""
    if i < 0 or b < 0:
        raise DomainError(f"count_bar_skyt needs non-negative arguments, got ({i},{b})")
    if i == 0 or b < 2:
        return 0
    numer = 2 * _fact(b + 2 * i - 1)
    denom = _fact(i + 1) * _fact(i - 1) * _fact(b - 2) * (b + i) * (b + i - 2)
    return exact_div(numer, denom)


@lru_cache(maxsize=None)
def count_bar_skyt_alternating(i: int, b: int) -> int:
    """bar-skyt(i, b) from the alternating-sum formula (same conventions)."""
    if i < 0 or b < 0:
        raise DomainError(f"count_bar_skyt_alternating needs non-negative arguments, got ({i},{b})")
    if i == 0 or b < 2:
        return 0
    total = Fraction(0)
    for k in range(b - 1):
        term = Fraction(
            binomial(b + 2 * i - 1, b - 2 - k) * _fact(2 * i + k + 2) * (k + 1),
            _fact(i + k + 2),
        )
        total += term if k % 2 == 0 else -term
    total /= _fact(i + 1)
    if total.denominator != 1:
        raise InvariantViolation(f"bar_skyt({i},{b}) evaluated to non-integer {total}")
    return int(total)


def skyt_i1_closed_form(m: int, d: int) -> int:
    """skyt(m + 1, 1, d - 1) = C(m + d, d - 1) - m - d, valid for m >= 1, d >= 3."""
    if m < 1 or d < 3:
        raise DomainError(f"closed form needs m >= 1 and d >= 3, got m={m}, d={d}")
    return binomial(m + d, d - 1) - m - d


def count_disjoint_positive(m: int, d: int, i: int, c: int, cap: int = DEFAULT_CELL_CAP) -> int:
    """Count fillings of Skyt(m+1, i, d-2i+1) meeting at least one of:

    1. the top entry of the right column is 1;
    2. the bottom entry of the right column exceeds ``d + c``;
    3. the third entry of the left column is at most ``d`` (never, if that
       column has fewer than three cells).

    For a disjoint circuit-hyperplane family of size ``c`` this equals the
    ``i``-th KL coefficient.  Degenerate shapes follow the skyt conventions.
    """
    if c < 0:
        raise DomainError(f"c must be non-negative, got {c}")
    if i < 0 or (i > 0 and 2 * i >= d):
        raise DomainError(f"need 0 <= i < d/2, got i={i}, d={d}")
    a, b = m + 1, d - 2 * i + 1
    if i == 0:
        return 1
    if a < 2 or b < 2:
        return 0
    fillings = enumerate_skyt(a, i, b, cap)
    if not fillings:
        return 0
    shape = fillings[0].shape
    rows = np.array([f.entries for f in fillings], dtype=np.int64)
    right = shape.column(shape.right)
    left = shape.column(0)
    hit = rows[:, right[0]] == 1
    hit |= rows[:, right[-1]] > d + c
    if len(left) >= 3:
        hit |= rows[:, left[2]] < d + 1
    return int(hit.sum())


def _fact(n: int) -> int:
    return math.factorial(n)
