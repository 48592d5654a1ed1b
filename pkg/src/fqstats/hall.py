"""Pair correlations of squarefrees and the fixed-q variance main term.

The singular series for the pair (f, f + J) is

    S(J) = prod_P (1 - 2/|P|^2) * prod_{P^2 | J} (|P|^2 - 1)/(|P|^2 - 2)
         = alpha_sf * s(J),

with the first (infinite) product truncated at an explicit degree cutoff
and carried as an exact rational together with a certified tail bound;
the second product is finite and exact.  The generating series of s over
monic J is

    F(u) = sum_J s(J) u^(deg J) = Z(u) prod_P (1 + u^(2 deg P)/(|P|^2-2)),

which gives a second, independent way to evaluate sum_{deg J <= h} s(J).

The fixed-q variance of squarefree counts in intervals of a given size has
main term

    sqrt(H) * beta_q/(1 - q^-3) * { (1+q^-2)/sqrt(q)   h even
                                  { (1+1/q)/q          h odd,

with beta_q = prod_P (1 - 3/|P|^2 + 2/|P|^3).  The exact variance is also
computed directly from pair correlations:

    Var = <N> - <N>^2 + (H/q^n) sum_{J != 0, deg J <= h} S(J; n),

an identity over the interval partition (f and f + J always share an
interval when deg J <= h), which doubles as an independent code path
against the partition-based brute force in stats.py.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bulk import pair_correlation_count, squarefree_table
from .factor import factor, irreducible_count, irreducibles
from .field import Field, field_of
from .poly import Polynomial, format_poly, monic_polynomials, polynomials_up_to

DEFAULT_CUTOFF = 8
_MAX_PRIMES_PER_DEGREE = 300_000


def _effective_cutoff(q: int, cutoff: int) -> int:
    """Clamp the truncation degree so the exact-rational Euler products stay
    a sane size (q^d irreducibles of degree d each contribute ~2d log q
    digits); the certified tail bound always reflects the clamped value."""
    d = cutoff
    while d > 2 and q ** d > _MAX_PRIMES_PER_DEGREE:
        d -= 1
    return max(2, d)


def pair_correlation(J: Polynomial, n: int, budget: int | None = None) -> int:
    """S(J; n) = #{f in M_n : f, f + J both squarefree} by enumeration."""
    return pair_correlation_count(J.field, n, J, budget)


# -- Euler products, exact rational with certified tails ----------------------


def _euler_tail(q: int, cutoff: int, weight: int) -> Fraction:
    """Upper bound for sum_{d > cutoff} N_d * weight / q^(2d), using
    N_d <= q^d / d; bounds the relative truncation error of products whose
    local factors are 1 - weight/|P|^2 * (1 + o(1))."""
    return Fraction(weight, (cutoff + 1)) * Fraction(1, q ** cutoff * (q - 1))


_ALPHA_CACHE: dict[tuple, tuple[Fraction, Fraction]] = {}


def alpha_squarefree_pairs(field: Field, cutoff: int = DEFAULT_CUTOFF
                           ) -> tuple[Fraction, Fraction]:
    """(truncated prod_P (1 - 2/|P|^2), absolute tail bound)."""
    q = field.q
    cutoff = _effective_cutoff(q, cutoff)
    key = (q, cutoff)
    if key not in _ALPHA_CACHE:
        value = Fraction(1)
        for d in range(1, cutoff + 1):
            local = 1 - Fraction(2, q ** (2 * d))
            value *= local ** irreducible_count(q, d)
        _ALPHA_CACHE[key] = (value, value * _euler_tail(q, cutoff, 2))
    return _ALPHA_CACHE[key]


@dataclass(frozen=True)
class SingularSeries:
    """Exact-rational singular series value for one shift J."""

    J_text: str
    cutoff: int
    alpha_sf: Fraction
    alpha_tail_bound: Fraction
    s_factor: Fraction
    value: Fraction  # alpha_sf * s_factor


def s_factor(J: Polynomial) -> Fraction:
    """s(J) = prod over P with P^2 | J of (|P|^2 - 1)/(|P|^2 - 2); exact."""
    if J.is_zero:
        raise ValueError("singular series needs J != 0")
    q = J.field.q
    out = Fraction(1)
    if J.degree < 2:
        return out
    for P, e in factor(J).factors:
        if e >= 2:
            norm2 = q ** (2 * P.degree)
            out *= Fraction(norm2 - 1, norm2 - 2)
    return out


def singular_series(J: Polynomial, cutoff: int = DEFAULT_CUTOFF) -> SingularSeries:
    alpha, tail = alpha_squarefree_pairs(J.field, cutoff)
    s = s_factor(J)
    return SingularSeries(J_text=format_poly(J), cutoff=cutoff, alpha_sf=alpha,
                          alpha_tail_bound=tail, s_factor=s, value=alpha * s)


# -- the double-sum representation, for cross-checking ------------------------


def s_local(alpha_exp: int, j: int) -> int:
    """sum over max(u,v) = alpha_exp, 2 min(u,v) <= j of mu(P^u) mu(P^v);
    the local value of the multiplicative function behind the double sum."""
    def mu_pp(e: int) -> int:
        return 1 if e == 0 else (-1 if e == 1 else 0)
    total = 0
    for u in range(alpha_exp + 1):
        for v in range(alpha_exp + 1):
            if max(u, v) == alpha_exp and 2 * min(u, v) <= j:
                total += mu_pp(u) * mu_pp(v)
    return total


def pair_sum_double(J: Polynomial, depth: int) -> Fraction:
    """sum over monic d1, d2 with deg lcm(d1,d2) <= depth of
    mu(d1) mu(d2) kappa(d1,d2;J) / |lcm|^2 -- the congruence-count form."""
    from .arith import mobius
    field = J.field
    q = field.q
    total = Fraction(0)
    ds = [d for m in range(0, depth + 1) for d in monic_polynomials(field, m)]
    mus = {d: mobius(d) for d in ds}
    for d1 in ds:
        if mus[d1] == 0:
            continue
        for d2 in ds:
            if mus[d2] == 0:
                continue
            g = d1.gcd(d2)
            lcm_deg = d1.degree + d2.degree - g.degree
            if lcm_deg > depth:
                continue
            kappa = 1 if (J % (g * g)).is_zero else 0
            if kappa:
                total += Fraction(mus[d1] * mus[d2], q ** (2 * lcm_deg))
    return total


def pair_sum_euler(J: Polynomial, depth: int) -> Fraction:
    """The same truncated sum via the local factors 1 + s(P, v_P(J))/|P|^2,
    expanded as a power series in the degree and truncated at depth."""
    field = J.field
    q = field.q
    vals = {P: e for P, e in factor(J).factors} if J.degree >= 1 else {}
    series = [Fraction(0)] * (depth + 1)
    series[0] = Fraction(1)
    for d in range(1, depth + 1):
        for P in irreducibles(field, d):
            j = vals.get(P, 0)
            local = Fraction(s_local(1, j), q ** (2 * d))
            for i in range(depth, d - 1, -1):
                series[i] += series[i - d] * local
    return sum(series)


# -- generating series of s(J) -------------------------------------------------


@dataclass(frozen=True)
class SumSingularResult:
    h: int
    by_enumeration: Fraction | None
    by_series: Fraction

    @property
    def value(self) -> Fraction:
        return self.by_series


def sum_singular(field: Field, h: int, enumerate_limit: int = 8
                 ) -> SumSingularResult:
    """sum_{j <= h} sum_{J in M_j} s(J), two independent ways.

    The series route expands F(u) = Z(u) prod_P (1 + u^(2 deg P)/(|P|^2-2))
    to order h (exact rationals; primes of degree <= h/2 suffice).  The
    enumeration route factors every monic J of degree <= h and is run when
    h <= enumerate_limit.
    """
    q = field.q
    series = [Fraction(0)] * (h + 1)
    series[0] = Fraction(1)
    for d in range(1, h // 2 + 1):
        count = irreducible_count(q, d)
        local = Fraction(1, q ** (2 * d) - 2)
        for _ in range(count):
            for i in range(h, 2 * d - 1, -1):
                series[i] += series[i - 2 * d] * local
    # multiply by Z(u): coefficients q^j, i.e. cumulative with weight q
    total_series = [Fraction(0)] * (h + 1)
    for i in range(h + 1):
        acc = Fraction(0)
        for j in range(i + 1):
            acc += series[j] * q ** (i - j)
        total_series[i] = acc
    by_series = sum(total_series)

    by_enum = None
    if h <= enumerate_limit:
        by_enum = Fraction(0)
        for j in range(h + 1):
            for J in monic_polynomials(field, j):
                by_enum += s_factor(J)
    return SumSingularResult(h=h, by_enumeration=by_enum, by_series=by_series)


# -- beta_q and the fixed-q prediction -----------------------------------------


@dataclass(frozen=True)
class BetaConstant:
    q: int
    cutoff: int
    value: Fraction
    tail_bound: Fraction


_BETA_CACHE: dict[tuple, BetaConstant] = {}


def beta_constant(q: int, cutoff: int = DEFAULT_CUTOFF) -> BetaConstant:
    """beta_q = prod_P (1 - 3/|P|^2 + 2/|P|^3), truncated at the cutoff."""
    cutoff = _effective_cutoff(q, cutoff)
    key = (q, cutoff)
    if key not in _BETA_CACHE:
        value = Fraction(1)
        for d in range(1, cutoff + 1):
            norm = q ** d
            local = 1 - Fraction(3, norm ** 2) + Fraction(2, norm ** 3)
            value *= local ** irreducible_count(q, d)
        _BETA_CACHE[key] = BetaConstant(q=q, cutoff=cutoff, value=value,
                                        tail_bound=value * _euler_tail(q, cutoff, 3))
    return _BETA_CACHE[key]


@dataclass(frozen=True)
class HallPrediction:
    q: int
    h: int
    value: float
    beta: BetaConstant
    parity: str


def hall_prediction(q: int, h: int, cutoff: int = DEFAULT_CUTOFF) -> HallPrediction:
    """Fixed-q main term: sqrt(H) * beta_q/(1-q^-3) * parity factor."""
    beta = beta_constant(q, cutoff)
    scale = float(beta.value) / (1.0 - q ** -3.0)
    root_h = q ** ((h + 1) / 2.0)
    if h % 2 == 0:
        value = root_h * scale * (1.0 + q ** -2.0) / math.sqrt(q)
        parity = "even"
    else:
        value = root_h * scale * (1.0 + 1.0 / q) / q
        parity = "odd"
    return HallPrediction(q=q, h=h, value=value, beta=beta, parity=parity)


# -- exact variance through pair correlations ----------------------------------


def hall_variance_bruteforce(field: Field, n: int, h: int,
                             budget: int | None = None) -> Fraction:
    """Exact Var of the interval squarefree count via the pair-correlation
    expansion; independent of the partition-based route in stats.py."""
    if not 0 <= h <= n - 2:
        raise ValueError(f"h = {h} outside [0, {n - 2}]")
    q = field.q
    sq = squarefree_table(field, n, budget)
    total_sq = int(sq.sum())
    H = q ** (h + 1)
    mean = Fraction(H * total_sq, q ** n)
    pair_total = 0
    for J in polynomials_up_to(field, h):
        if J.is_zero:
            continue
        pair_total += pair_correlation_count(field, n, J, budget)
    return mean - mean ** 2 + Fraction(H * pair_total, q ** n)


@dataclass
class HallReport:
    q: int
    n: int
    h: int
    var_bf: Fraction
    prediction: HallPrediction
    seed: int
    runtime_ms: float

    @property
    def rel_dev(self) -> float:
        return float(self.var_bf) / self.prediction.value - 1.0

    def to_dict(self, with_timings: bool = False) -> dict:
        return {
            "q": self.q, "n": self.n, "h": self.h,
            "var_bf": {"num": self.var_bf.numerator, "den": self.var_bf.denominator},
            "prediction": self.prediction.value,
            "beta_q": {
                "num": self.prediction.beta.value.numerator,
                "den": self.prediction.beta.value.denominator,
                "cutoff": self.prediction.beta.cutoff,
                "tail_bound": float(self.prediction.beta.tail_bound),
            },
            "rel_dev": self.rel_dev,
            "runtime_ms": self.runtime_ms if with_timings else None,
            "seed": self.seed,
        }
