"""Short intervals I(A; h) in F_q[t], the coefficient-reversal involution,
and the bijection between intervals and arithmetic progressions mod t^(n-h).

An interval I(A; h) = {f : deg(f - A) <= h} around a monic A of degree n
contains exactly H = q^(h+1) polynomials, all monic of degree n when
h <= n-2.  Distinct intervals partition M_n and are indexed by monic B of
degree n-h-1 via the canonical centers t^(h+1) * B.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .field import Field
from .poly import Polynomial, monic_polynomials, polynomials_up_to, t_power


def reverse(f: Polynomial, n: int) -> Polynomial:
    """theta_n(f)(t) = t^n f(1/t): coefficient reversal at window size n."""
    if f.degree > n:
        raise ValueError(f"deg f = {f.degree} exceeds window {n}")
    coeffs = list(f.coeffs) + [0] * (n - f.degree)
    return Polynomial(f.field, coeffs[::-1])


def star(f: Polynomial) -> Polynomial:
    """f*(t) = t^(deg f) f(1/t); an involution on polynomials with f(0) != 0."""
    if f.is_zero:
        raise ValueError("star of the zero polynomial")
    return Polynomial(f.field, f.coeffs[::-1])


@dataclass(frozen=True)
class ShortInterval:
    """I(A; h) with A monic of degree n and 0 <= h <= n-2."""

    center: Polynomial
    h: int

    def __post_init__(self):
        if not self.center.is_monic:
            raise ValueError("interval center must be monic")
        if not 0 <= self.h <= self.center.degree - 2:
            raise ValueError(
                f"h = {self.h} outside [0, {self.center.degree - 2}] for "
                f"degree {self.center.degree}")

    @property
    def n(self) -> int:
        return self.center.degree

    @property
    def size(self) -> int:
        """H = q^(h+1)."""
        return self.center.field.q ** (self.h + 1)

    def canonical_center(self) -> Polynomial:
        """The center of t^(h+1) * B form (low coefficients zeroed)."""
        coeffs = [0] * (self.h + 1) + list(self.center.coeffs[self.h + 1:])
        return Polynomial(self.center.field, coeffs)

    def index(self) -> Polynomial:
        """The monic B of degree n-h-1 with I = I(t^(h+1) B; h)."""
        return Polynomial(self.center.field, self.center.coeffs[self.h + 1:])

    def __contains__(self, f: Polynomial) -> bool:
        return (f - self.center).degree <= self.h

    def members(self) -> Iterator[Polynomial]:
        """The q^(h+1) polynomials A + g, deg g <= h, each exactly once."""
        for g in polynomials_up_to(self.center.field, self.h):
            yield self.center + g

    def __eq__(self, other) -> bool:
        return (isinstance(other, ShortInterval) and other.h == self.h
                and other.canonical_center() == self.canonical_center())

    def __hash__(self) -> int:
        return hash((self.canonical_center(), self.h))


def enumerate_interval(interval: ShortInterval) -> Iterator[Polynomial]:
    return interval.members()


def interval_partition(field: Field, n: int, h: int) -> Iterator[tuple[Polynomial, ShortInterval]]:
    """(B, I(t^(h+1) B; h)) over monic B of degree n-h-1: a partition of M_n."""
    if not 0 <= h <= n - 2:
        raise ValueError(f"h = {h} outside [0, {n - 2}]")
    shift = t_power(field, h + 1)
    for B in monic_polynomials(field, n - h - 1):
        yield B, ShortInterval(shift * B, h)


@dataclass(frozen=True)
class ProgressionSpec:
    """{g : deg g <= degree_cap, g = residue mod modulus}.

    Shared with the Dirichlet machinery: the reversal theta_n maps
    I(t^(h+1) B; h) onto the progression with modulus t^(n-h) and residue
    theta_{n-h-1}(B).
    """

    modulus: Polynomial
    residue: Polynomial
    degree_cap: int

    @property
    def size(self) -> int:
        q = self.modulus.field.q
        return q ** (self.degree_cap - self.modulus.degree + 1)

    def members(self) -> Iterator[Polynomial]:
        free = self.degree_cap - self.modulus.degree
        for s in polynomials_up_to(self.modulus.field, free):
            yield self.residue + self.modulus * s

    def __contains__(self, g: Polynomial) -> bool:
        return g.degree <= self.degree_cap and (g - self.residue) % self.modulus == \
            Polynomial(self.modulus.field, ())


def interval_to_progression(B: Polynomial, n: int, h: int) -> ProgressionSpec:
    """The image of I(t^(h+1) B; h) under theta_n.

    B must be monic of degree n-h-1 with 0 <= h <= n-2.  Members f with
    f(0) != 0 map onto the progression members of degree exactly n.
    """
    if not B.is_monic:
        raise ValueError("B must be monic")
    if not 0 <= h <= n - 2 or B.degree != n - h - 1:
        raise ValueError("need deg B = n-h-1 and 0 <= h <= n-2")
    field = B.field
    return ProgressionSpec(
        modulus=t_power(field, n - h),
        residue=reverse(B, n - h - 1),
        degree_cap=n,
    )
