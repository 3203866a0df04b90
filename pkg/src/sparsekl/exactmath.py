"""Exact integer combinatorics and dense integer polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, 0 outside ``0 <= k <= n``.  Negative ``n`` is rejected."""
    if n < 0:
        raise DomainError(f"binomial: n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(x: int, n: int) -> int:
    """``x (x-1) ... (x-n+1)``; the empty product is 1."""
    if n < 0:
        raise DomainError(f"falling_factorial: n must be non-negative, got {n}")
    out = 1
    for j in range(n):
        out *= x - j
    return out


def rising_factorial(x: int, n: int) -> int:
    if n < 0:
        raise DomainError(f"rising_factorial: n must be non-negative, got {n}")
    out = 1
    for j in range(n):
        out *= x + j
    return out


def catalan(n: int) -> int:
    return exact_div(binomial(2 * n, n), n + 1)


def exact_div(num: int, den: int) -> int:
    """Integer quotient that refuses to truncate."""
    q, r = divmod(num, den)
    if r:
        raise InvariantViolation(f"{num} is not divisible by {den}")
    return q


# -- bitmask helpers ---------------------------------------------------------


def to_mask(elements: Iterable[int]) -> int:
    """1-based element labels -> bitmask (bit ``e - 1``)."""
    mask = 0
    for e in elements:
        e = int(e)
        if e < 1:
            raise DomainError(f"ground-set labels are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    """Bitmask -> sorted tuple of 1-based labels."""
    out = []
    e = 0
    while mask >> e:
        if (mask >> e) & 1:
            out.append(e + 1)
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- polynomials --------------------------------------------------------------


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, init=False)
class IntPolynomial:
    """Dense polynomial with Python-int coefficients, lowest degree first.

    The zero polynomial has no coefficients; otherwise the leading
    coefficient is nonzero.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return poly_add(self, other)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return poly_add(self, poly_scale(other, -1))

    def __neg__(self) -> "IntPolynomial":
        return poly_scale(self, -1)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    __rmul__ = __mul__

    def to_list(self) -> list[int]:
        return list(self.coeffs) if self.coeffs else [0]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("t" if k == 1 else f"t^{k}")
            terms.append((sign, body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def poly_add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    n = max(len(p.coeffs), len(q.coeffs))
    return IntPolynomial(p[k] + q[k] for k in range(n))


def poly_scale(p: IntPolynomial, c: int) -> IntPolynomial:
    return IntPolynomial(c * a for a in p.coeffs)


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if p.is_zero() or q.is_zero():
        return IntPolynomial()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPolynomial(out)


def reciprocal_shift(p: IntPolynomial, d: int) -> IntPolynomial:
    """``t**d * p(1/t)``; requires ``deg p <= d``."""
    if p.degree > d:
        raise DomainError(f"reciprocal_shift: degree {p.degree} exceeds {d}")
    if d < 0:
        return IntPolynomial()
    return IntPolynomial(p[d - k] for k in range(d + 1))
