"""Factorization of polynomials over F_q (odd q).

The pipeline is the classical one: squarefree decomposition (with the
characteristic-p p-th-power special case), distinct-degree splitting via
Frobenius powers, and Cantor-Zassenhaus equal-degree splitting.  The
random element used by equal-degree splitting is drawn from a generator
keyed on (global seed, input polynomial), and the factor list is sorted,
so results are reproducible regardless of call order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import Field
from .poly import Polynomial, monic_polynomials

_SEED = 0


def set_seed(seed: int) -> None:
    """Set the global experiment seed used for equal-degree splitting."""
    global _SEED
    _SEED = int(seed)


def get_seed() -> int:
    return _SEED


@dataclass(frozen=True)
class Factorization:
    """unit * prod P_i^e_i with the P_i distinct monic irreducibles."""

    field: Field
    unit: int  # encoded element of F_q^x
    factors: tuple[tuple[Polynomial, int], ...]

    def product(self) -> Polynomial:
        out = Polynomial(self.field, (self.unit,))
        for P, e in self.factors:
            out = out * P ** e
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def mobius(self) -> int:
        if not self.is_squarefree:
            return 0
        return -1 if len(self.factors) % 2 else 1


def _pth_root(f: Polynomial) -> Polynomial:
    """g with g^p = f, for f whose derivative vanishes (coeffs on t^(ip))."""
    F = f.field
    e = F.p ** (F.k - 1)  # inverse of Frobenius x -> x^p on F_q
    out = [F.pow(f.coeff(i * F.p), e) for i in range(f.degree // F.p + 1)]
    return Polynomial(F, out)


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic f as prod g_i^i with the g_i squarefree and pairwise coprime."""
    F = f.field
    result: dict[Polynomial, int] = {}

    def accumulate(g: Polynomial, mult: int) -> None:
        if g.degree > 0:
            result[g] = result.get(g, 0) + mult

    def recurse(g: Polynomial, outer: int) -> None:
        if g.degree <= 0:
            return
        gp = g.derivative()
        if gp.is_zero:
            recurse(_pth_root(g), outer * F.p)
            return
        c = g.gcd(gp)
        w = g // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            accumulate(z, outer * i)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            recurse(_pth_root(c), outer * F.p)

    recurse(f.monic(), 1)
    parts = [(g, m) for g, m in result.items()]
    parts.sort(key=lambda gm: (gm[1], gm[0].sort_key()))
    return parts


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split squarefree monic f into (product of degree-d primes, d) parts."""
    F = f.field
    out = []
    t = Polynomial(F, (0, 1))
    xq = t.pow_mod(F.q, f)
    d = 1
    g = f
    while g.degree >= 2 * d:
        h = g.gcd(xq - t)
        if h.degree > 0:
            out.append((h, d))
            g = g // h
            xq = xq % g
        d += 1
        if g.degree >= 2 * d:
            xq = xq.pow_mod(F.q, g)
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus split of monic squarefree f, all prime factors deg d."""
    F = f.field
    if f.degree == d:
        return [f]
    half = (F.q ** d - 1) // 2  # q odd
    while True:
        r = Polynomial(F, [rng.randrange(F.q) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        g = f.gcd(r)
        if 0 < g.degree < f.degree:
            break
        s = r.pow_mod(half, f) - Polynomial(F, (1,))
        g = f.gcd(s)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _rng_for(f: Polynomial) -> random.Random:
    key = _SEED
    for c in f.coeffs:
        key = key * f.field.q + c + 1
    return random.Random(key)


def factor(f: Polynomial) -> Factorization:
    """Complete factorization into a unit times monic irreducible powers."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    F = f.field
    unit = f.lc()
    monic = f.monic()
    if monic.degree == 0:
        return Factorization(F, unit, ())
    rng = _rng_for(f)
    found: list[tuple[Polynomial, int]] = []
    for g, mult in squarefree_decomposition(monic):
        for part, d in _distinct_degree(g):
            for P in _equal_degree(part, d, rng):
                found.append((P, mult))
    found.sort(key=lambda pe: pe[0].sort_key())
    return Factorization(F, unit, tuple(found))


def is_irreducible(f: Polynomial) -> bool:
    """Frobenius-based test for monic f of degree >= 1."""
    n = f.degree
    if n < 1:
        return False
    F = f.field
    f = f.monic()
    t = Polynomial(F, (0, 1))
    if not ((t.pow_mod(F.q ** n, f) - t) % f).is_zero:
        return False
    r = 2
    m = n
    while m > 1:
        if m % r == 0:
            g = f.gcd(t.pow_mod(F.q ** (n // r), f) - t)
            if g.degree > 0:
                return False
            while m % r == 0:
                m //= r
        r += 1
    return True


def _int_mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (necklace formula)."""
    if d <= 0:
        raise ValueError("degree must be positive")
    total = sum(_int_mobius(d // e) * q ** e for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d


_IRRED_CACHE: dict[tuple[int, int, int], list[Polynomial]] = {}


def irreducibles(field: Field, d: int) -> list[Polynomial]:
    """All monic irreducibles of degree d, in enumeration order (cached)."""
    key = (field.p, field.k, d)
    if key not in _IRRED_CACHE:
        found = [f for f in monic_polynomials(field, d) if is_irreducible(f)]
        assert len(found) == irreducible_count(field.q, d)
        _IRRED_CACHE[key] = found
    return _IRRED_CACHE[key]
