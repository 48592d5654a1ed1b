"""Arithmetic functions on F_q[t]: Mobius, squarefree indicator,
quadratic character, discriminant, cycle type.

The discriminant is normalized as

    disc f = (-1)^(n(n-1)/2) * Res(f, f') / lc(f),      n = deg f,

which is the normalization under which the classical link between the
Mobius function and quadratic residuosity of the discriminant,

    mu(f) = (-1)^(deg f) * chi2(disc f)       (odd characteristic),

holds identically, including the trinomial closed form
disc(t^n + a t + b) = (-1)^(n(n-1)/2) (n^n b^(n-1) + (1-n)^(n-1) a^n).
Both are verified exhaustively in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .field import Field, FieldElement
from .poly import Polynomial
from .factor import factor


def is_squarefree(f: Polynomial) -> bool:
    """True iff no irreducible divides f twice.

    Uses gcd(f, f'); if f' = 0 and deg f > 0 then f is a p-th power and
    in particular not squarefree, so no factorization is ever needed.
    """
    if f.is_zero:
        raise ValueError("squarefree test of the zero polynomial")
    if f.degree == 0:
        return True
    fp = f.derivative()
    if fp.is_zero:
        return False
    return f.gcd(fp).degree == 0


def mobius(f: Polynomial) -> int:
    """(-1)^k for a unit times k distinct monic irreducibles, else 0."""
    if f.is_zero:
        raise ValueError("mobius of the zero polynomial")
    if f.degree == 0:
        return 1
    if not is_squarefree(f):
        return 0
    return factor(f).mobius()


def squarefree_indicator(f: Polynomial) -> int:
    return 1 if is_squarefree(f) else 0


def quadratic_character(c, field: Field | None = None) -> int:
    """chi2(c): 1 for nonzero squares, -1 for nonsquares, 0 for zero.

    Computed as the sign of c^((q-1)/2).
    """
    if isinstance(c, FieldElement):
        field = c.field
        c = c.index
    if field is None:
        raise ValueError("field required when c is given as an encoding")
    if c == 0:
        return 0
    s = field.pow(c, (field.q - 1) // 2)
    if s == 1:
        return 1
    if field.add(s, 1) == 0:  # s == -1
        return -1
    raise AssertionError("c^((q-1)/2) not in {1,-1}")


def resultant(f: Polynomial, g: Polynomial) -> int:
    """Res(f, g) as an encoded field element, via the Euclidean recurrence

        Res(f, g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) Res(g, r),

    r = f mod g, with Res(f, c) = c^deg(f) for constants c and Res = 0
    when either operand vanishes.
    """
    F = f.field
    if f.is_zero or g.is_zero:
        return 0
    acc = 1
    negate = False
    while g.degree > 0:
        if f.degree < g.degree:
            if f.degree % 2 == 1 and g.degree % 2 == 1:
                negate = not negate
            f, g = g, f
            continue
        r = f % g
        if r.is_zero:
            return 0
        if f.degree % 2 == 1 and g.degree % 2 == 1:
            negate = not negate
        acc = F.mul(acc, F.pow(g.lc(), f.degree - r.degree))
        f, g = g, r
    acc = F.mul(acc, F.pow(g.coeff(0), f.degree))
    return F.neg(acc) if negate else acc


def discriminant(f: Polynomial) -> FieldElement:
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    F = f.field
    n = f.degree
    res = resultant(f, f.derivative())
    d = F.div(res, f.lc())
    if (n * (n - 1) // 2) % 2 == 1:
        d = F.neg(d)
    return F.element(d)


@dataclass(frozen=True)
class CycleType:
    """lambda_j = number of irreducible factors of degree j, with multiplicity."""

    counts: tuple[int, ...]  # counts[j-1] = lambda_j, length = deg f

    @property
    def degree(self) -> int:
        return sum((j + 1) * c for j, c in enumerate(self.counts))

    def sign(self) -> int:
        s = 1
        for j, c in enumerate(self.counts, start=1):
            if (j - 1) * c % 2 == 1:
                s = -s
        return s


def cycle_type(f: Polynomial) -> CycleType:
    """Cycle structure of monic f; for squarefree f,
    mu(f) = (-1)^deg(f) * sign(cycle_type(f))."""
    if f.is_zero:
        raise ValueError("cycle type of the zero polynomial")
    if not f.is_monic:
        raise ValueError("cycle type is defined for monic polynomials")
    counts = [0] * f.degree
    for P, e in factor(f).factors:
        counts[P.degree - 1] += e
    return CycleType(tuple(counts))


# ---------------------------------------------------------------------------
# The class of interval-summable arithmetic functions: even, weakly
# multiplicative, bounded uniformly in q, and symmetric under coefficient
# reversal.  The variance machinery in stats.py is valid exactly for this
# class; membership is spot-checked on small exhaustive sweeps.


@dataclass(frozen=True)
class ArithmeticFunction:
    name: str
    fn: Callable[[Polynomial], int]
    at_t_power: Callable[[int], int]  # k -> value at t^k
    bound: int = 1  # A_n, uniform in q for the built-ins

    def __call__(self, f: Polynomial) -> int:
        return self.fn(f)

    def t_power_values(self, n: int) -> list[int]:
        return [self.at_t_power(k) for k in range(n + 1)]


MOBIUS = ArithmeticFunction(
    name="mu",
    fn=mobius,
    at_t_power=lambda k: 1 if k == 0 else (-1 if k == 1 else 0),
)

SQUAREFREE = ArithmeticFunction(
    name="mu2",
    fn=squarefree_indicator,
    at_t_power=lambda k: 1 if k <= 1 else 0,
)

ONE = ArithmeticFunction(
    name="one",
    fn=lambda f: 1,
    at_t_power=lambda k: 1,
)

BY_NAME = {"mu": MOBIUS, "mu2": SQUAREFREE}


def _star(f: Polynomial) -> Polynomial:
    return Polynomial(f.field, f.coeffs[::-1])


def check_interval_class(alpha: ArithmeticFunction, field: Field,
                         max_degree: int = 3) -> None:
    """Raise if alpha visibly fails the even/multiplicative/bounded/symmetric
    requirements on an exhaustive sweep of degrees <= max_degree."""
    from .poly import monic_polynomials

    for n in range(0, max_degree + 1):
        for f in monic_polynomials(field, n):
            v = alpha(f)
            if abs(v) > alpha.bound:
                raise ValueError(f"{alpha.name} exceeds bound {alpha.bound} at {f!r}")
            for c in range(2, field.q):
                if alpha(f.scale(c)) != v:
                    raise ValueError(f"{alpha.name} is not even at {f!r}")
            if f.coeff(0) != 0:
                if alpha(_star(f)) != v:
                    raise ValueError(f"{alpha.name} is not *-symmetric at {f!r}")
                for k in range(1, max_degree + 1 - n):
                    tk = Polynomial(field, [0] * k + [1])
                    if alpha(tk * f) != alpha.at_t_power(k) * v:
                        raise ValueError(
                            f"{alpha.name} is not weakly multiplicative at t^{k}*{f!r}")
