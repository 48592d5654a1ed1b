"""Vectorized sweeps over all monic polynomials of a given degree.

A monic f of degree n is identified with the integer sum(c_i q^i) over its
n non-leading coefficients (encoded field elements), so M_n maps onto
range(q^n) and the short interval I(t^(h+1)B; h) onto a contiguous index
block of length q^(h+1).  Mobius values and squarefree flags for a whole
degree are produced by a sieve over irreducibles of degree <= n/2 (a
polynomial whose tracked factor degrees do not reach n carries exactly one
further prime factor of degree > n/2, which flips the sign once).

Everything here works for prime and extension fields alike through the
field's lookup tables; array element encodings are uint8.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np

from .field import Field
from .poly import Polynomial
from .factor import irreducibles

DEFAULT_POLY_BUDGET = 10 ** 8
_CHUNK = 1 << 22


class BudgetExceeded(RuntimeError):
    """An enumeration request exceeded the configured budget."""


def check_budget(size: int, budget: int | None) -> None:
    limit = DEFAULT_POLY_BUDGET if budget is None else budget
    if size > limit:
        raise BudgetExceeded(f"enumeration of {size} objects exceeds budget {limit}")


def digit_columns(idx: np.ndarray, q: int, width: int) -> np.ndarray:
    """Base-q digits of idx, shape (len(idx), width), least significant first."""
    out = np.empty((len(idx), width), dtype=np.uint8)
    for j in range(width):
        out[:, j] = (idx // q ** j) % q
    return out


def _monic_digits(field: Field, m: int, lo: int, hi: int) -> np.ndarray:
    """Digits of monic degree-m polynomials in index range [lo, hi),
    including the leading-one column: shape (hi-lo, m+1)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, m + 1), dtype=np.uint8)
    out[:, :m] = digit_columns(idx, field.q, m)
    out[:, m] = 1
    return out


def _product_indices(field: Field, P: Polynomial, n: int, lo: int, hi: int) -> np.ndarray:
    """Indices of P*g, g running over monic degree n - deg P in [lo, hi).

    P must be monic; the products are monic of degree n and the returned
    indices are pairwise distinct.
    """
    T = field.tables
    q = field.q
    d = P.degree
    m = n - d
    G = _monic_digits(field, m, lo, hi)
    out = np.zeros((hi - lo, n), dtype=np.uint8)
    for i, c in enumerate(P.coeffs):
        if c == 0:
            continue
        seg = T.mul[c][G] if c != 1 else G
        hi_col = min(i + m + 1, n) - i  # columns of seg that land below t^n
        out[:, i:i + hi_col] = T.add[out[:, i:i + hi_col], seg[:, :hi_col]]
    idx = np.zeros(hi - lo, dtype=np.int64)
    for j in range(n):
        idx += out[:, j].astype(np.int64) * q ** j
    return idx


def _sieve(field: Field, n: int) -> tuple[np.ndarray, np.ndarray]:
    q = field.q
    total = q ** n
    mu = np.ones(total, dtype=np.int8)
    degsum = np.zeros(total, dtype=np.uint8)
    squarefull = np.zeros(total, dtype=bool)
    for d in range(1, n // 2 + 1):
        for P in irreducibles(field, d):
            m = n - d
            for lo in range(0, q ** m, _CHUNK):
                hi = min(lo + _CHUNK, q ** m)
                idx = _product_indices(field, P, n, lo, hi)
                mu[idx] = -mu[idx]
                degsum[idx] += d
            P2 = P * P
            m2 = n - 2 * d
            for lo in range(0, q ** m2, _CHUNK):
                hi = min(lo + _CHUNK, q ** m2)
                idx = _product_indices(field, P2, n, lo, hi)
                squarefull[idx] = True
    leftover = ~squarefull & (degsum < n)
    mu[leftover] = -mu[leftover]
    mu[squarefull] = 0
    return mu, ~squarefull


_TABLE_CACHE: OrderedDict[tuple, tuple[np.ndarray, np.ndarray]] = OrderedDict()
_CACHE_BYTES = 1_600_000_000


def sieve_tables(field: Field, n: int, budget: int | None = None
                 ) -> tuple[np.ndarray, np.ndarray]:
    """(mu, squarefree) arrays over M_n in index order; cached, read-only."""
    check_budget(field.q ** n, budget)
    key = (field.p, field.k, field.modulus, n)
    if key in _TABLE_CACHE:
        _TABLE_CACHE.move_to_end(key)
        return _TABLE_CACHE[key]
    mu, sq = _sieve(field, n)
    mu.flags.writeable = False
    sq.flags.writeable = False
    _TABLE_CACHE[key] = (mu, sq)
    while sum(2 * v[0].nbytes for v in _TABLE_CACHE.values()) > _CACHE_BYTES \
            and len(_TABLE_CACHE) > 1:
        _TABLE_CACHE.popitem(last=False)
    return mu, sq


def mobius_table(field: Field, n: int, budget: int | None = None) -> np.ndarray:
    return sieve_tables(field, n, budget)[0]


def squarefree_table(field: Field, n: int, budget: int | None = None) -> np.ndarray:
    return sieve_tables(field, n, budget)[1]


def interval_sums(values: np.ndarray, q: int, h: int) -> np.ndarray:
    """Per-interval sums of a degree-n table: entry b is the sum over
    I(t^(h+1) B_b; h).  Intervals are contiguous index blocks of q^(h+1)."""
    block = q ** (h + 1)
    if len(values) % block:
        raise ValueError("table length is not a multiple of the interval size")
    return values.reshape(-1, block).sum(axis=1, dtype=np.int64)


def residue_indices(field: Field, n: int, Q: Polynomial,
                    budget: int | None = None) -> np.ndarray:
    """Encoding of (f mod Q) for every monic f of degree n, in index order.

    The reduction is linear in the coefficients: f = t^n + sum c_i t^i, so
    f mod Q = (t^n mod Q) + sum c_i (t^i mod Q).
    """
    q = field.q
    total = q ** n
    check_budget(total, budget)
    T = field.tables
    dQ = Q.degree
    tpow = []
    tmod = Polynomial(field, (1,))
    t = Polynomial(field, (0, 1))
    for _ in range(n + 1):
        tpow.append([tmod.coeff(j) for j in range(dQ)])
        tmod = (tmod * t) % Q
    out = np.empty(total, dtype=np.int64)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        res = np.zeros((hi - lo, dQ), dtype=np.uint8)
        for j in range(dQ):  # t^n term (coefficient 1)
            res[:, j] = tpow[n][j]
        for i in range(n):
            row = tpow[i]
            if not any(row):
                continue
            ci = ((idx // q ** i) % q).astype(np.uint8)
            for j in range(dQ):
                if row[j]:
                    res[:, j] = T.add[res[:, j], T.mul[ci, row[j]]]
        enc = np.zeros(hi - lo, dtype=np.int64)
        for j in range(dQ):
            enc += res[:, j].astype(np.int64) * q ** j
        out[lo:hi] = enc
    return out


def normalized_unit_encodings(field: Field, m: int, M: int,
                              budget: int | None = None) -> np.ndarray:
    """Encoding of (f / f(0) mod t^M) for every monic f of degree m,
    -1 where f(0) = 0.  The normalized residue has constant term 1, which
    is the residue system used for even-character sums."""
    q = field.q
    total = q ** m
    check_budget(total, budget)
    T = field.tables
    out = np.empty(total, dtype=np.int64)
    width = min(m + 1, M)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        D = _monic_digits(field, m, lo, hi)
        r = D[:, :width]
        c = r[:, 0]
        cinv = T.inv[c]
        s = T.mul[cinv[:, None], r]
        enc = np.zeros(hi - lo, dtype=np.int64)
        for j in range(width):
            enc += s[:, j].astype(np.int64) * q ** j
        enc[c == 0] = -1
        out[lo:hi] = enc
    return out


def pair_correlation_count(field: Field, n: int, J: Polynomial,
                           budget: int | None = None) -> int:
    """S(J; n) = #{f in M_n : f and f + J both squarefree}, J != 0, deg J < n."""
    if J.is_zero or J.degree >= n:
        raise ValueError("need J != 0 with deg J < n")
    q = field.q
    sq = squarefree_table(field, n, budget)
    T = field.tables
    total = q ** n
    count = 0
    support = [(i, c) for i, c in enumerate(J.coeffs) if c]
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        shifted = idx.copy()
        for i, c in support:
            dig = ((idx // q ** i) % q).astype(np.uint8)
            shifted += (T.add[dig, c].astype(np.int64) - dig) * q ** i
        count += int(np.count_nonzero(sq[lo:hi] & sq[shifted]))
    return count


# ---------------------------------------------------------------------------
# Vectorized arithmetic in the residue ring F_q[t]/(Q), for unit-group work.


class ResidueRingBulk:
    """Elementwise products and powers of encoded residues mod Q."""

    def __init__(self, field: Field, Q: Polynomial):
        if not Q.is_monic or Q.degree < 1:
            raise ValueError("modulus must be monic of positive degree")
        self.field = field
        self.Q = Q
        self.deg = Q.degree
        self.domain = field.q ** Q.degree
        self.identity = 1  # encoding of the residue 1
        t = Polynomial(field, (0, 1))
        tmod = Polynomial(field, (1,))
        rows = []
        for _ in range(2 * self.deg - 1):
            rows.append([tmod.coeff(j) for j in range(self.deg)])
            tmod = (tmod * t) % Q
        self._rows = rows

    def digits(self, enc: np.ndarray) -> np.ndarray:
        return digit_columns(enc, self.field.q, self.deg)

    def encode_digits(self, digits: np.ndarray) -> np.ndarray:
        q = self.field.q
        enc = np.zeros(len(digits), dtype=np.int64)
        for j in range(digits.shape[1]):
            enc += digits[:, j].astype(np.int64) * q ** j
        return enc

    def encode_poly(self, f: Polynomial) -> int:
        r = f % self.Q
        return sum(r.coeff(j) * self.field.q ** j for j in range(self.deg))

    def decode(self, enc: int) -> Polynomial:
        q = self.field.q
        return Polynomial(self.field, [(enc // q ** j) % q for j in range(self.deg)])

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        T = self.field.tables
        dQ = self.deg
        A = self.digits(a)
        B = self.digits(b)
        wide = np.zeros((len(A), 2 * dQ - 1), dtype=np.uint8)
        for i in range(dQ):
            Ai = A[:, i]
            for j in range(dQ):
                col = i + j
                wide[:, col] = T.add[wide[:, col], T.mul[Ai, B[:, j]]]
        res = wide[:, :dQ].copy()
        for c in range(dQ, 2 * dQ - 1):
            row = self._rows[c]
            src = wide[:, c]
            for j in range(dQ):
                if row[j]:
                    res[:, j] = T.add[res[:, j], T.mul[src, row[j]]]
        return self.encode_digits(res)

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.full(len(a), self.identity, dtype=np.int64)
        base = a.astype(np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def unit_encodings(self) -> np.ndarray:
        """Sorted encodings of the invertible residues mod Q."""
        q = self.field.q
        T = self.field.tables
        if all(c == 0 for c in self.Q.coeffs[:-1]):  # Q = t^deg
            enc = np.arange(self.domain, dtype=np.int64)
            return enc[(enc % q) != 0]
        from .factor import factor
        marked = np.zeros(self.domain, dtype=bool)
        for P, _ in factor(self.Q).factors:
            mP = self.deg - P.degree  # multiples P*s with deg s < mP
            S = digit_columns(np.arange(q ** mP, dtype=np.int64), q, mP)
            prod = np.zeros((q ** mP, self.deg), dtype=np.uint8)
            for i, c in enumerate(P.coeffs):
                if c == 0:
                    continue
                seg = T.mul[c][S] if c != 1 else S
                prod[:, i:i + mP] = T.add[prod[:, i:i + mP], seg]
            marked[self.encode_digits(prod)] = True
        enc = np.arange(self.domain, dtype=np.int64)
        return enc[~marked]
