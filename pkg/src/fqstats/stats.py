"""Means, variances and covariances of arithmetic-function sums over short
intervals and arithmetic progressions, each computed two independent ways.

The brute-force route enumerates, accumulates exact integers, and divides
only at the end, so its output is an exact rational.  The spectral route
expands the centered sums over Dirichlet characters:

    intervals:     Cov(N_a, N_b) = Phi_ev(t^(n-h))^(-2) *
        sum_{chi != chi_0 even} ( sum_m a(t^(n-m)) M(m; a chi) ) *
                        conj( sum_m b(t^(n-m)) M(m; b chi) )

    progressions:  Var_Q(S) = Phi(Q)^(-2) sum_{chi != chi_0} |M(n; a chi)|^2

Both are exact identities for even, symmetric, weakly multiplicative
functions (no character is dropped here, primitive or not), so agreement
with brute force is limited only by floating point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import ArithmeticFunction, BY_NAME, check_interval_class
from .bulk import (check_budget, interval_sums, normalized_unit_encodings,
                   residue_indices, sieve_tables)
from .dirichlet import even_char_system, unit_group
from .field import Field
from .intervals import ShortInterval
from .poly import Polynomial, format_poly, monic_polynomials, t_power


# -- pointwise sums ------------------------------------------------------------


def interval_sum(alpha: ArithmeticFunction, A: Polynomial, h: int) -> int:
    """N_alpha(A; h): exact sum of alpha over the short interval."""
    return sum(alpha(f) for f in ShortInterval(A, h).members())


def progression_sum(alpha: ArithmeticFunction, n: int, Q: Polynomial,
                    A: Polynomial) -> int:
    """S_alpha(A) over monic f of degree n with f = A mod Q."""
    field = Q.field
    r = A % Q
    if n < Q.degree:
        f = r
        return alpha(f) if (f.degree == n and f.is_monic) else 0
    total = 0
    for s in monic_polynomials(field, n - Q.degree):
        total += alpha(r + Q * s)
    return total


# -- exact means ---------------------------------------------------------------


def mean_over_monics(alpha: ArithmeticFunction, field: Field, n: int,
                     budget: int | None = None) -> Fraction:
    """<alpha>_n = q^(-n) sum over M_n, exact."""
    q = field.q
    if alpha.name == "mu":
        total = 1 if n == 0 else (-q if n == 1 else 0)
    elif alpha.name == "mu2":
        total = 1 if n == 0 else (q if n == 1 else q ** n - q ** (n - 1))
    elif alpha.name == "one":
        total = q ** n
    else:
        check_budget(q ** n, min(budget or 10 ** 6, 10 ** 6))
        total = sum(alpha(f) for f in monic_polynomials(field, n))
    return Fraction(total, q ** n)


def mean_interval(alpha: ArithmeticFunction, field: Field, n: int, h: int,
                  budget: int | None = None) -> Fraction:
    """<N_alpha(.; h)> = H <alpha>_n, exact."""
    if not 0 <= h <= n - 2:
        raise ValueError(f"h = {h} outside [0, {n - 2}]")
    return field.q ** (h + 1) * mean_over_monics(alpha, field, n, budget)


# -- value tables --------------------------------------------------------------


def _value_table(alpha: ArithmeticFunction, field: Field, n: int,
                 budget: int | None) -> np.ndarray:
    if alpha.name == "mu":
        return sieve_tables(field, n, budget)[0]
    if alpha.name == "mu2":
        return sieve_tables(field, n, budget)[1].astype(np.int8)
    if alpha.name == "one":
        check_budget(field.q ** n, budget)
        return np.ones(field.q ** n, dtype=np.int8)
    check_budget(field.q ** n, min(budget or 10 ** 6, 10 ** 6))
    return np.fromiter((alpha(f) for f in monic_polynomials(field, n)),
                       dtype=np.int64, count=field.q ** n)


# -- brute-force variance ------------------------------------------------------


def interval_sum_table(alpha: ArithmeticFunction, field: Field, n: int, h: int,
                       budget: int | None = None) -> np.ndarray:
    """N_alpha over all canonical intervals, indexed by B in M_(n-h-1)."""
    if not 0 <= h <= n - 2:
        raise ValueError(f"h = {h} outside [0, {n - 2}]")
    table = _value_table(alpha, field, n, budget)
    return interval_sums(table, field.q, h)


def variance_interval_bruteforce(alpha: ArithmeticFunction, field: Field,
                                 n: int, h: int,
                                 budget: int | None = None) -> Fraction:
    """Exact rational variance of N_alpha over the B-indexed partition
    (equal to the average over all A in M_n, each interval being counted
    q^(h+1) times there)."""
    sums = interval_sum_table(alpha, field, n, h, budget)
    k = field.q ** (n - h - 1)
    s1 = int(sums.sum())
    overflow_bound = (alpha.bound * field.q ** (h + 1)) ** 2 * k
    if overflow_bound < 2 ** 62:
        s2 = int(np.dot(sums, sums))
    else:
        s2 = sum(int(x) * int(x) for x in sums.tolist())
    return Fraction(s2, k) - Fraction(s1, k) ** 2


def covariance_interval_bruteforce(alpha: ArithmeticFunction,
                                   beta: ArithmeticFunction, field: Field,
                                   n: int, h: int,
                                   budget: int | None = None) -> Fraction:
    a = interval_sum_table(alpha, field, n, h, budget)
    b = interval_sum_table(beta, field, n, h, budget)
    k = field.q ** (n - h - 1)
    return Fraction(int(np.dot(a, b)), k) - \
        Fraction(int(a.sum()), k) * Fraction(int(b.sum()), k)


# -- spectral variance ---------------------------------------------------------


def _validate_class(alpha: ArithmeticFunction, field: Field) -> None:
    key = (alpha.name, field.p, field.k, field.modulus)
    if key not in _validated:
        check_interval_class(alpha, field, max_degree=2)
        _validated.add(key)


_validated: set = set()


def spectral_interval_terms(alpha: ArithmeticFunction, field: Field, n: int,
                            h: int, budget: int | None = None) -> np.ndarray:
    """T_alpha(chi) = sum_m alpha(t^(n-m)) M(m; alpha chi) for every even
    character mod t^(n-h) (flat order, trivial character first)."""
    if not 0 <= h <= n - 2:
        raise ValueError(f"h = {h} outside [0, {n - 2}]")
    _validate_class(alpha, field)
    M = n - h
    system = even_char_system(field, M)
    tvals = alpha.t_power_values(n)
    terms = np.zeros(system.size, dtype=complex)
    for m in range(n + 1):
        coeff = tvals[n - m]
        if coeff == 0:
            continue
        enc = normalized_unit_encodings(field, m, M, budget)
        table = _value_table(alpha, field, m, budget)
        mask = enc >= 0
        pos = system.positions(enc[mask])
        v = np.bincount(pos, weights=table[mask].astype(np.float64),
                        minlength=system.size)
        terms += coeff * system.sums_for_weights(v)
    return terms


def covariance_interval_spectral(alpha: ArithmeticFunction,
                                 beta: ArithmeticFunction, field: Field,
                                 n: int, h: int,
                                 budget: int | None = None) -> float:
    ta = spectral_interval_terms(alpha, field, n, h, budget)
    tb = ta if beta is alpha else spectral_interval_terms(beta, field, n, h, budget)
    phi_ev = field.q ** (n - h - 1)
    total = np.dot(ta, np.conj(tb)) - ta[0] * np.conj(tb[0])
    value = total / phi_ev ** 2
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        raise AssertionError(f"covariance has nonvanishing imaginary part {value}")
    return float(value.real)


def variance_interval_spectral(alpha: ArithmeticFunction, field: Field,
                               n: int, h: int,
                               budget: int | None = None) -> float:
    """Var N_alpha by the even-character identity; floating-point exact
    up to FFT rounding (agreement with brute force ~ 1e-12 relative)."""
    return covariance_interval_spectral(alpha, alpha, field, n, h, budget)


# -- progressions --------------------------------------------------------------


@dataclass(frozen=True)
class ProgressionVariance:
    bruteforce: Fraction
    spectral: float
    mean: Fraction
    phi: int


def variance_progression(alpha: ArithmeticFunction, field: Field, n: int,
                         Q: Polynomial, budget: int | None = None,
                         char_budget: int | None = None) -> ProgressionVariance:
    """Var_Q(S_alpha) over coprime residues: exact brute force plus the
    all-characters spectral identity."""
    group = unit_group(Q, char_budget)
    enc = residue_indices(field, n, Q, budget)
    table = _value_table(alpha, field, n, budget)
    w = np.bincount(enc, weights=table.astype(np.float64),
                    minlength=group.ring.domain)
    svals = w[group.units]
    ints = np.rint(svals).astype(np.int64)
    if np.abs(svals - ints).max() > 1e-6:
        raise AssertionError("progression sums did not come out integral")
    phi = group.phi
    s1 = int(ints.sum())
    s2 = int(np.dot(ints, ints))
    mean = Fraction(s1, phi)
    var_bf = Fraction(s2, phi) - mean ** 2
    mvals = group.all_char_sums(w)
    var_spec = (np.abs(mvals) ** 2).sum() - abs(mvals[0]) ** 2
    return ProgressionVariance(bruteforce=var_bf,
                               spectral=float(var_spec) / phi ** 2,
                               mean=mean, phi=phi)


# -- theoretical predictions ---------------------------------------------------


class PredictionRangeError(ValueError):
    """Requested parameters violate the hypotheses of the chosen theorem."""


@dataclass(frozen=True)
class Prediction:
    theorem: str
    value: float
    in_range: bool
    note: str = ""


THEOREMS = ("mobius_short_interval", "sqfree_short_interval",
            "mobius_progression", "sqfree_progression",
            "small_degree_progression", "fixed_q_sqfree_interval")


def theory_prediction(theorem: str, *, q: int, n: int, h: int | None = None,
                      deg_q: int | None = None, phi: int | None = None,
                      alpha_mean_square: float | None = None,
                      cutoff: int = 8, override: bool = False) -> Prediction:
    """Large-q (or large-n) main terms, with hypothesis-range checking.

    Out-of-range parameters raise PredictionRangeError unless override is
    set, in which case the formula value is returned flagged in_range=False.
    """
    note = ""
    if theorem == "mobius_short_interval":
        if h is None:
            raise ValueError("h required")
        in_range = 0 <= h <= n - 5
        value = float(q ** (h + 1))
        note = "variance ~ H"
    elif theorem == "sqfree_short_interval":
        if h is None:
            raise ValueError("h required")
        in_range = (0 <= h <= n - 6) and math.gcd(q, 6) == 1
        value = float(q ** (h // 2)) if h % 2 == 0 else float(q ** ((h - 1) // 2))
        note = "variance ~ sqrt(H)/sqrt(q) (h even) or sqrt(H)/q (h odd)"
    elif theorem == "mobius_progression":
        if phi is None or deg_q is None:
            raise ValueError("phi and deg_q required")
        in_range = n >= deg_q >= 2
        value = q ** n / phi
        note = "variance ~ q^n / Phi(Q)"
    elif theorem == "sqfree_progression":
        if deg_q is None:
            raise ValueError("deg_q required")
        in_range = n >= deg_q >= 2
        base = q ** (n / 2.0) / q ** (deg_q / 2.0)
        value = base / math.sqrt(q) if (n - deg_q) % 2 == 1 else base / q
        note = "parity branch on n - deg Q"
    elif theorem == "small_degree_progression":
        if phi is None or deg_q is None or alpha_mean_square is None:
            raise ValueError("phi, deg_q, alpha_mean_square required")
        in_range = n < deg_q
        value = q ** n / phi * alpha_mean_square
        note = "at most one polynomial per progression"
    elif theorem == "fixed_q_sqfree_interval":
        if h is None:
            raise ValueError("h required")
        from .hall import hall_prediction
        value = hall_prediction(q, h, cutoff).value
        in_range = h <= 2 * n / 9
        note = "fixed-q large-degree main term; measured-trend regime"
    else:
        raise ValueError(f"unknown theorem {theorem!r}; pick from {THEOREMS}")
    if not in_range and not override:
        raise PredictionRangeError(
            f"{theorem} hypotheses violated for q={q}, n={n}, h={h}, "
            f"deg_q={deg_q}; pass override=True to compute anyway")
    return Prediction(theorem=theorem, value=value, in_range=in_range, note=note)


# -- experiment cells ----------------------------------------------------------


@dataclass
class VarianceReport:
    """One experiment cell; the JSON schema the CLI emits."""

    kind: str  # "interval" | "progression"
    alpha: str
    q: int
    n: int
    h: int | None
    modulus: str | None
    mean_bf: Fraction
    var_bf: Fraction
    var_spec: float
    prediction: Prediction | None
    runtime_ms: float
    seed: int

    @property
    def rel_dev_bf_spec(self) -> float:
        scale = max(1.0, abs(float(self.var_bf)))
        return abs(self.var_spec - float(self.var_bf)) / scale

    @property
    def rel_dev_bf_theory(self) -> float | None:
        if self.prediction is None or self.prediction.value == 0:
            return None
        return float(self.var_bf) / self.prediction.value - 1.0

    def to_dict(self, with_timings: bool = False) -> dict:
        return {
            "params": {
                "kind": self.kind, "alpha": self.alpha, "q": self.q,
                "n": self.n, "h": self.h, "modulus": self.modulus,
            },
            "mean_bf": {"num": self.mean_bf.numerator,
                        "den": self.mean_bf.denominator},
            "var_bf": {"num": self.var_bf.numerator,
                       "den": self.var_bf.denominator},
            "var_spec": self.var_spec,
            "prediction": None if self.prediction is None else {
                "value": self.prediction.value,
                "theorem": self.prediction.theorem,
                "in_range": self.prediction.in_range,
            },
            "rel_dev_bf_spec": self.rel_dev_bf_spec,
            "rel_dev_bf_theory": self.rel_dev_bf_theory,
            "runtime_ms": self.runtime_ms if with_timings else None,
            "seed": self.seed,
        }


def _auto_theorem(alpha: ArithmeticFunction, kind: str) -> str:
    if kind == "interval":
        return "mobius_short_interval" if alpha.name == "mu" else "sqfree_short_interval"
    return "mobius_progression" if alpha.name == "mu" else "sqfree_progression"


def run_interval_cell(alpha: ArithmeticFunction, field: Field, n: int, h: int,
                      budget: int | None = None, seed: int = 0) -> VarianceReport:
    start = time.perf_counter()
    var_bf = variance_interval_bruteforce(alpha, field, n, h, budget)
    var_spec = variance_interval_spectral(alpha, field, n, h, budget)
    mean = mean_interval(alpha, field, n, h, budget)
    pred = None
    if alpha.name in BY_NAME:
        pred = theory_prediction(_auto_theorem(alpha, "interval"),
                                 q=field.q, n=n, h=h, override=True)
    return VarianceReport(
        kind="interval", alpha=alpha.name, q=field.q, n=n, h=h, modulus=None,
        mean_bf=mean, var_bf=var_bf, var_spec=var_spec, prediction=pred,
        runtime_ms=(time.perf_counter() - start) * 1e3, seed=seed)


def run_progression_cell(alpha: ArithmeticFunction, field: Field, n: int,
                         Q: Polynomial, budget: int | None = None,
                         char_budget: int | None = None,
                         seed: int = 0) -> VarianceReport:
    start = time.perf_counter()
    pv = variance_progression(alpha, field, n, Q, budget, char_budget)
    pred = None
    if alpha.name in BY_NAME:
        pred = theory_prediction(_auto_theorem(alpha, "progression"),
                                 q=field.q, n=n, deg_q=Q.degree, phi=pv.phi,
                                 override=True)
    return VarianceReport(
        kind="progression", alpha=alpha.name, q=field.q, n=n, h=None,
        modulus=format_poly(Q), mean_bf=pv.mean, var_bf=pv.bruteforce,
        var_spec=pv.spectral, prediction=pred,
        runtime_ms=(time.perf_counter() - start) * 1e3, seed=seed)
