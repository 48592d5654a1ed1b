"""Dirichlet characters mod Q in F_q[t], their L-functions, and unitarized
Frobenius classes.

Supported moduli are exactly the two families the experiments use:
Q = t^m (m >= 2) and squarefree monic Q of degree >= 2.  The unit group
(F_q[t]/Q)^x is decomposed into cyclic factors by the generic machinery in
abelian.py; a character is an exponent vector against that basis, with the
value convention

    chi(x) = exp(+2 pi i * sum_i k_i a_i(x) / d_i),      a = dlog(x),

so that summing chi(x) w(x) over the whole group for every character at
once is an inverse FFT over the coordinate box.

For chi != chi_0 the L-function L(u, chi) = sum_m M(m; chi) u^m is a
polynomial of degree deg Q - 1 whose coefficients are plain character
sums over monic polynomials; even chi have the trivial zero at u = 1.
After removing that zero (for even primitive chi) every inverse root has
absolute value sqrt(q), and dividing them by sqrt(q) yields the
unitarized Frobenius class, of size deg Q - 1 (odd chi) or deg Q - 2
(even chi).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .abelian import AbelianBasis, build_abelian_basis
from .arith import ArithmeticFunction, BY_NAME
from .bulk import ResidueRingBulk, check_budget, residue_indices, sieve_tables
from .factor import factor
from .field import Field
from .poly import (Polynomial, format_poly, monic_polynomials, parse_poly,
                   polynomials_up_to, t_power)
from .rmt import secular_coeff_values, sym_trace_values

DEFAULT_CHAR_BUDGET = 10 ** 5


class UnitGroup:
    """The unit group of F_q[t]/(Q) with basis and discrete logs.

    Carries the prime-degree multiset of Q (the lambda_k multiplicities
    used by the trivial-character generating function) and the kernels of
    reduction to each maximal proper modulus, which decide primitivity.
    """

    _cache: dict[tuple, "UnitGroup"] = {}

    def __new__(cls, Q: Polynomial, char_budget: int | None = None):
        key = (id(Q.field), Q.coeffs)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self._init(Q, char_budget)
        cls._cache[key] = self
        return self

    def _init(self, Q: Polynomial, char_budget: int | None) -> None:
        field = Q.field
        if not Q.is_monic or Q.degree < 2:
            raise ValueError("modulus must be monic of degree >= 2")
        if all(c == 0 for c in Q.coeffs[:-1]):
            self.kind = "t_power"
            self.prime_factors = [(t_power(field, 1), Q.degree)]
        else:
            fact = factor(Q)
            if not fact.is_squarefree:
                raise ValueError("modulus must be t^m or squarefree")
            self.kind = "squarefree"
            self.prime_factors = [(P, 1) for P, _ in fact.factors]
        self.field = field
        self.modulus = Q
        self.ring = ResidueRingBulk(field, Q)
        self.units = self.ring.unit_encodings()
        self.phi = len(self.units)
        check_budget(self.phi, char_budget if char_budget is not None
                     else DEFAULT_CHAR_BUDGET)
        self.basis: AbelianBasis = build_abelian_basis(self.ring, self.units)
        self._scalar_gen_enc = field.multiplicative_generator()
        self._kernels = self._reduction_kernels()
        self._unit_coords = None
        self._lcoeffs = None
        self._frob_cache: dict[tuple[int, ...], FrobeniusClass] = {}

    def _reduction_kernels(self) -> list[np.ndarray]:
        field, Q = self.field, self.modulus
        kernels = []
        if self.kind == "t_power":
            m = Q.degree
            enc = np.array([1 + a * field.q ** (m - 1) for a in range(field.q)],
                           dtype=np.int64)
            kernels.append(enc)
        else:
            for P, _ in self.prime_factors:
                R = Q // P
                encs = []
                for s in polynomials_up_to(field, P.degree - 1):
                    u = Polynomial(field, (1,)) + R * s
                    if u.gcd(Q).degree == 0:
                        encs.append(self.ring.encode_poly(u))
                kernels.append(np.array(sorted(encs), dtype=np.int64))
        return kernels

    @property
    def prime_degree_counts(self) -> dict[int, int]:
        """lambda_k = number of prime divisors of Q of degree k."""
        out: dict[int, int] = {}
        for P, _ in self.prime_factors:
            out[P.degree] = out.get(P.degree, 0) + 1
        return out

    def unit_coords(self) -> np.ndarray:
        """(phi, #gens) coordinate matrix aligned with self.units."""
        if self._unit_coords is None:
            flat = self.basis.dlog_flat[self.units]
            if self.basis.orders:
                self._unit_coords = np.array(
                    np.unravel_index(flat, self.basis.orders)).T
            else:
                self._unit_coords = np.zeros((self.phi, 0), dtype=np.int64)
        return self._unit_coords

    def all_char_sums(self, weights_by_enc: np.ndarray) -> np.ndarray:
        """sum_x chi(x) w(x) for every character, C-order flat over orders."""
        shape = self.basis.shape
        arr = np.zeros(shape, dtype=complex)
        arr.flat[self.basis.dlog_flat[self.units]] = weights_by_enc[self.units]
        return (np.fft.ifftn(arr) * self.basis.size).ravel()

    def characters(self) -> list["Character"]:
        return [Character(self, tuple(int(e) for e in exps))
                for exps in np.ndindex(*self.basis.shape)]

    def character(self, exponents: Sequence[int]) -> "Character":
        return Character(self, tuple(int(e) % d for e, d
                                     in zip(exponents, self.basis.orders)))

    def l_coefficient_matrix(self) -> np.ndarray:
        """M(m; chi) for m = 0..deg Q - 1, all characters: shape (phi, deg Q)."""
        if self._lcoeffs is None:
            dQ = self.modulus.degree
            out = np.empty((self.basis.size, dQ), dtype=complex)
            for m in range(dQ):
                counts = np.bincount(residue_indices(self.field, m, self.modulus),
                                     minlength=self.ring.domain).astype(float)
                out[:, m] = self.all_char_sums(counts)
            self._lcoeffs = out
        return self._lcoeffs


def unit_group(Q: Polynomial, char_budget: int | None = None) -> UnitGroup:
    return UnitGroup(Q, char_budget)


class Character:
    """A Dirichlet character mod Q as an exponent vector against the basis."""

    def __init__(self, group: UnitGroup, exponents: tuple[int, ...]):
        if len(exponents) != len(group.basis.orders):
            raise ValueError("exponent vector length mismatch")
        self.group = group
        self.exponents = tuple(int(e) % d for e, d
                               in zip(exponents, group.basis.orders))
        self._flags: dict[str, bool] = {}

    def __eq__(self, other):
        return (isinstance(other, Character) and other.group is self.group
                and other.exponents == self.exponents)

    def __hash__(self):
        return hash((id(self.group), self.exponents))

    def __repr__(self):
        return f"Character(mod {self.group.modulus!r}, k={self.exponents})"

    @property
    def flat_index(self) -> int:
        return self.group.basis.flat_of_exponents(self.exponents)

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def value_fraction(self, f) -> Fraction | None:
        """chi(f) as the exact fraction of a full turn, None when chi(f) = 0."""
        enc = f if isinstance(f, int) else self.group.ring.encode_poly(f)
        flat = int(self.group.basis.dlog_flat[enc])
        if flat < 0:
            return None
        coords = self.group.basis.coords_of(enc)
        fr = Fraction(0)
        for k, a, d in zip(self.exponents, coords, self.group.basis.orders):
            fr += Fraction(k * a, d)
        return fr % 1

    def value(self, f) -> complex:
        fr = self.value_fraction(f)
        if fr is None:
            return 0j
        return cmath.exp(2j * cmath.pi * float(fr))

    def value_vector(self) -> np.ndarray:
        """chi over group.units, aligned with that array."""
        coords = self.group.unit_coords()
        if coords.shape[1] == 0:
            return np.ones(self.group.phi, dtype=complex)
        weights = np.array([k / d for k, d in
                            zip(self.exponents, self.group.basis.orders)])
        return np.exp(2j * np.pi * (coords @ weights))

    @property
    def is_even(self) -> bool:
        """Trivial on the scalars F_q^x."""
        if "even" not in self._flags:
            fr = self.value_fraction(self.group._scalar_gen_enc)
            self._flags["even"] = fr == 0
        return self._flags["even"]

    @property
    def is_primitive(self) -> bool:
        """Nontrivial on every kernel of reduction to a maximal proper modulus."""
        if "primitive" not in self._flags:
            prim = True
            for kernel in self.group._kernels:
                if all(self.value_fraction(int(u)) == 0 for u in kernel):
                    prim = False
                    break
            self._flags["primitive"] = prim
        return self._flags["primitive"]

    def square(self) -> "Character":
        return Character(self.group, tuple(2 * e for e in self.exponents))

    def conjugate(self) -> "Character":
        return Character(self.group, tuple(-e for e in self.exponents))

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "trivial": self.is_trivial,
            "even": self.is_even,
            "primitive": self.is_primitive,
        }


def build_characters(Q: Polynomial, char_budget: int | None = None
                     ) -> list[Character]:
    """All Phi(Q) characters mod Q with even/primitive flags."""
    return unit_group(Q, char_budget).characters()


def first_squarefree_moduli(field: Field, degree: int, count: int
                            ) -> list[Polynomial]:
    """The first `count` squarefree monic polynomials of the given degree in
    enumeration order; the deterministic modulus panel used by sweeps."""
    from .arith import is_squarefree
    out = []
    for Q in monic_polynomials(field, degree):
        if is_squarefree(Q):
            out.append(Q)
            if len(out) == count:
                break
    return out


# -- character sums -----------------------------------------------------------


def _weights_over_residues(alpha: ArithmeticFunction, field: Field, n: int,
                           Q: Polynomial, budget: int | None) -> np.ndarray:
    """w[enc] = sum of alpha(f) over monic f of degree n with f mod Q = enc."""
    domain = field.q ** Q.degree
    enc = residue_indices(field, n, Q, budget)
    if alpha.name == "one":
        return np.bincount(enc, minlength=domain).astype(float)
    if alpha.name in BY_NAME:
        table = sieve_tables(field, n, budget)[0 if alpha.name == "mu" else 1]
        return np.bincount(enc, weights=table.astype(np.float64), minlength=domain)
    check_budget(field.q ** n, min(budget or 10 ** 6, 10 ** 6))
    w = np.zeros(domain)
    for idx, f in enumerate(monic_polynomials(field, n)):
        w[enc[idx]] += alpha(f)
    return w


def char_sum(n: int, alpha: ArithmeticFunction, chi: Character,
             budget: int | None = None) -> complex:
    """M(n; alpha chi) = sum over monic f of degree n of alpha(f) chi(f)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    group = chi.group
    w = _weights_over_residues(alpha, group.field, n, group.modulus, budget)
    vec = chi.value_vector()
    return complex(np.dot(vec, w[group.units]))


def trivial_mobius_char_sum(group: UnitGroup, n: int) -> int:
    """M(n; mu chi_0) = C(n) - q C(n-1) from the partition generating function
    prod_k (1-u^k)^(-lambda_k) = sum C(n) u^n."""
    lam = group.prime_degree_counts
    coeffs = [1] + [0] * n
    for k, mult in lam.items():
        for _ in range(mult):
            # multiply by 1/(1-u^k): prefix sums with stride k
            for i in range(k, n + 1):
                coeffs[i] += coeffs[i - k]
    if n == 0:
        return coeffs[0]
    return coeffs[n] - group.field.q * coeffs[n - 1]


# -- L-functions and Frobenius classes ---------------------------------------


@dataclass(frozen=True)
class LFunction:
    """L(u, chi) as explicit coefficients.

    For nontrivial chi the coefficients are the polynomial of degree
    <= deg Q - 1; for the trivial character the stored coefficients are
    the numerator prod_{P | Q} (1 - u^deg P) and has_zeta_pole is set,
    the full function being numerator / (1 - q u).
    """

    chi: Character
    coeffs: tuple[complex, ...]
    has_zeta_pole: bool
    has_trivial_zero: bool

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and abs(self.coeffs[d]) < 1e-9:
            d -= 1
        return d

    def value(self, u: complex) -> complex:
        num = sum(c * u ** i for i, c in enumerate(self.coeffs))
        if self.has_zeta_pole:
            return num / (1 - self.chi.group.field.q * u)
        return num

    def inverse_roots(self) -> np.ndarray:
        """All alpha_j with L(u) = prod (1 - alpha_j u); nontrivial chi only."""
        if self.has_zeta_pole:
            raise ValueError("inverse roots are defined for nontrivial chi")
        trimmed = list(self.coeffs[:self.degree + 1])
        if len(trimmed) == 1:
            return np.array([], dtype=complex)
        return np.roots(trimmed)  # lowest-first input <=> reversed polynomial

    def nontrivial_inverse_roots(self) -> np.ndarray:
        """Inverse roots off the unit circle (the sqrt(q)-sized ones)."""
        roots = self.inverse_roots()
        cut = (1.0 + math.sqrt(self.chi.group.field.q)) / 2.0
        return roots[np.abs(roots) > cut]


def l_function(chi: Character) -> LFunction:
    group = chi.group
    field = group.field
    if chi.is_trivial:
        coeffs = [1]
        for P, _ in group.prime_factors:
            # multiply the integer coefficient list by (1 - u^deg P)
            d = P.degree
            new = coeffs + [0] * d
            for i in range(d, len(new)):
                new[i] -= coeffs[i - d] if i - d < len(coeffs) else 0
            coeffs = new
        return LFunction(chi, tuple(complex(c) for c in coeffs),
                         has_zeta_pole=True, has_trivial_zero=False)
    row = group.l_coefficient_matrix()[chi.flat_index]
    return LFunction(chi, tuple(row), has_zeta_pole=False,
                     has_trivial_zero=chi.is_even)


@dataclass(frozen=True)
class FrobeniusClass:
    """Eigenangles of the unitarized Frobenius conjugacy class Theta_chi."""

    angles: np.ndarray
    q: int
    modulus_text: str
    even: bool

    @property
    def dim(self) -> int:
        return len(self.angles)

    def sym_traces(self, kmax: int) -> np.ndarray:
        return sym_trace_values(self.angles, kmax)[0]

    def secular(self) -> np.ndarray:
        return secular_coeff_values(self.angles)[0]


def frobenius_class(chi: Character, tol: float = 1e-8) -> FrobeniusClass:
    """Unitarized Frobenius of a primitive character; removes the trivial
    zero first for even chi.  Size deg Q - 1 (odd) or deg Q - 2 (even)."""
    if chi.is_trivial or not chi.is_primitive:
        raise ValueError("frobenius_class needs a primitive character")
    group = chi.group
    if chi.exponents in group._frob_cache:
        return group._frob_cache[chi.exponents]
    L = l_function(chi)
    coeffs = np.array(L.coeffs)
    if chi.is_even:
        partial = np.cumsum(coeffs)  # L = (1-u) B  =>  B = running sums
        resid = abs(partial[-1])
        if resid > tol * max(1.0, np.abs(coeffs).max()):
            raise AssertionError(f"missing trivial zero at u=1: |L(1)| = {resid}")
        coeffs = partial[:-1]
    roots = np.roots(list(coeffs)) if len(coeffs) > 1 else np.array([], dtype=complex)
    sq = math.sqrt(group.field.q)
    if len(roots) and np.abs(np.abs(roots) - sq).max() > 1e-6 * sq:
        raise AssertionError("inverse root off the sqrt(q) circle for primitive chi")
    angles = np.sort(np.angle(roots / sq))
    out = FrobeniusClass(angles=angles, q=group.field.q,
                         modulus_text=format_poly(group.modulus),
                         even=bool(chi.is_even))
    group._frob_cache[chi.exponents] = out
    return out


# -- spectral forms of the twisted sums ---------------------------------------


def twisted_mobius_spectral(n: int, chi: Character) -> complex:
    """M(n; mu chi) from the Frobenius class.

    Even primitive chi:  M(n) = sum_{k<=n} q^(k/2) tr Sym^k Theta
    Odd primitive chi:   M(n) = q^(n/2) tr Sym^n Theta
    """
    fc = frobenius_class(chi)
    q = chi.group.field.q
    h = fc.sym_traces(n)
    if chi.is_even:
        return complex(sum(q ** (k / 2.0) * h[k] for k in range(n + 1)))
    return complex(q ** (n / 2.0) * h[n])


def _truncate_conv(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    return np.convolve(a, b)[:order + 1]


def twisted_sqfree_spectral(n: int, chi: Character) -> complex:
    """M(n; mu^2 chi) assembled from secular coefficients of Theta_chi and
    symmetric-power traces of Theta_chi^2 via the generating function
    L(u, chi) / L(u^2, chi^2)."""
    chi2 = chi.square()
    if chi.is_trivial or not chi.is_primitive:
        raise ValueError("chi must be primitive")
    if chi2.is_trivial or not chi2.is_primitive:
        raise ValueError("chi^2 must be primitive")
    q = chi.group.field.q
    fc1 = frobenius_class(chi)
    fc2 = frobenius_class(chi2)
    lam = fc1.secular()
    num = lam * (q ** (np.arange(len(lam)) / 2.0))  # det(I - u sqrt(q) Theta)
    if chi.is_even:
        num = np.convolve(num, [1.0, -1.0])
    h = fc2.sym_traces(n // 2 + 1)[:n // 2 + 1]
    inv_det = np.zeros(n + 1, dtype=complex)
    inv_det[::2] = h * (q ** (np.arange(len(h)) / 2.0))
    series = _truncate_conv(num[:n + 1], inv_det, n)
    if chi2.is_even:
        geom = np.zeros(n + 1)
        geom[::2] = 1.0  # 1/(1 - u^2)
        series = _truncate_conv(series, geom, n)
    return complex(series[n]) if n < len(series) else 0j


# -- serialization -------------------------------------------------------------


def characters_to_json(chars: list[Character]) -> str:
    group = chars[0].group
    payload = {
        "modulus": format_poly(group.modulus),
        "orders": list(group.basis.orders),
        "generators": [int(g) for g in group.basis.gens],
        "characters": [c.to_dict() for c in chars],
    }
    return json.dumps(payload, sort_keys=True)


def characters_from_json(text: str) -> list[Character]:
    payload = json.loads(text)
    Q = parse_poly(payload["modulus"])
    group = unit_group(Q)
    if list(group.basis.orders) != payload["orders"]:
        raise ValueError("stored basis orders do not match the rebuilt group")
    out = []
    for item in payload["characters"]:
        c = group.character(item["exponents"])
        for key in ("trivial", "even", "primitive"):
            attr = c.is_trivial if key == "trivial" else (
                c.is_even if key == "even" else c.is_primitive)
            if attr != item[key]:
                raise ValueError(f"stored {key} flag mismatch for {item}")
        out.append(c)
    return out


# -- the even-character system for short-interval work -----------------------


class EvenCharSystem:
    """Characters of the group G1 = {residues mod t^M with constant term 1},
    canonically the even characters mod t^M.

    A monic f with f(0) != 0 contributes to even-character sums through
    its normalized residue f / f(0) mod t^M; position() maps that encoding
    to the flat character-coordinate index used by sums_for_weights.
    """

    _cache: dict[tuple, "EvenCharSystem"] = {}

    def __new__(cls, field: Field, M: int):
        key = (id(field), M)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        if M < 2:
            raise ValueError("modulus exponent must be >= 2")
        self.field = field
        self.M = M
        self.ring = ResidueRingBulk(field, t_power(field, M))
        elements = np.arange(1, self.ring.domain, field.q, dtype=np.int64)
        self.basis = build_abelian_basis(self.ring, elements)
        self.size = field.q ** (M - 1)
        assert self.basis.size == self.size
        cls._cache[key] = self
        return self

    def positions(self, encodings: np.ndarray) -> np.ndarray:
        """Flat coordinate positions of normalized-residue encodings."""
        return self.basis.dlog_flat[encodings]

    def sums_for_weights(self, v: np.ndarray) -> np.ndarray:
        """sum_x chi(x) v(x) for all even characters; flat C-order, trivial
        character at index 0."""
        out = np.fft.ifftn(v.astype(complex).reshape(self.basis.shape)) * self.size
        return out.ravel()


def even_char_system(field: Field, M: int) -> EvenCharSystem:
    return EvenCharSystem(field, M)
