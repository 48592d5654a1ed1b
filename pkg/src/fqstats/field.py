"""Finite fields F_q of odd order q = p^k.

Field elements are encoded as integers in [0, q): the element with
coordinate vector (c_0, ..., c_{k-1}) in the power basis of the defining
modulus is encoded as c_0 + c_1*p + ... + c_{k-1}*p^(k-1).  For prime
fields (k = 1) the encoding is just the residue mod p.

Arithmetic goes through dense q x q lookup tables, which keeps scalar and
bulk (numpy) code paths identical for prime and extension fields.  Only
odd characteristic is supported; everything downstream assumes q odd.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MAX_Q = 256  # uint8 element encoding everywhere


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# Minimal polynomial arithmetic over F_p on plain integer lists, used only to
# search for the defining modulus of an extension field (the real Polynomial
# class lives in poly.py and needs a Field to exist first).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul_modp(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _rem_modp(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
        if not a:
            break
    return a


def _gcd_modp(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _rem_modp(a, b, p)
    return a


def _powmod_x(e: int, f: list[int], p: int) -> list[int]:
    """x^e mod f over F_p."""
    result = [1]
    base = _rem_modp([0, 1], f, p)
    while e:
        if e & 1:
            result = _rem_modp(_mul_modp(result, base, p), f, p)
        base = _rem_modp(_mul_modp(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible_modp(f: list[int], p: int) -> bool:
    k = len(f) - 1
    if k < 1:
        return False
    # x^(p^k) == x mod f, and x^(p^(k/r)) - x coprime to f for prime r | k
    if _trim([(a - b) % p for a, b in
              zip(_powmod_x(p ** k, f, p) + [0, 0], [0, 1] + [0] * k)]):
        return False
    r = 2
    kk = k
    while kk > 1:
        if kk % r == 0:
            xp = _powmod_x(p ** (k // r), f, p)
            diff = _trim([(a - b) % p for a, b in zip(xp + [0, 0], [0, 1] + [0] * k)])
            g = _gcd_modp(f, diff, p) if diff else f
            if len(g) - 1 > 0:
                return False
            while kk % r == 0:
                kk //= r
        r += 1
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over F_p in encoding order.

    Candidates are ordered by their integer encoding sum(c_i * p^i) of the
    non-leading coefficients, which makes the choice reproducible.
    """
    for idx in range(p ** k):
        coeffs = [(idx // p ** i) % p for i in range(k)] + [1]
        if _is_irreducible_modp(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldTables:
    """Dense numpy lookup tables for one field; shared by bulk sweeps."""

    add: np.ndarray  # (q, q) uint8
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray  # (q,)
    inv: np.ndarray  # (q,), inv[0] = 0 sentinel


class Field:
    """F_q, q = p^k odd, with integer-encoded elements.

    Instances are interned on (p, k, modulus), so fields compare by identity.
    """

    _cache: dict[tuple, "Field"] = {}

    def __new__(cls, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** k > _MAX_Q:
            raise ValueError(f"q = {p**k} exceeds supported maximum {_MAX_Q}")
        if k == 1:
            modulus = None
        elif modulus is None:
            modulus = default_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible_modp(list(modulus), p):
                raise ValueError("modulus is reducible")
        key = (p, k, modulus)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._build_tables()
        cls._cache[key] = self
        return self

    # -- construction of the lookup tables --------------------------------

    def _coords(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _encode(self, coords: list[int]) -> int:
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coords))

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _mul_modp(self._coords(a), self._coords(b), self.p)
        if self.k > 1:
            prod = _rem_modp(prod, list(self.modulus), self.p)
        return self._encode(prod + [0] * self.k)

    def _build_tables(self) -> None:
        q, p, k = self.q, self.p, self.k
        idx = np.arange(q)
        digits = np.stack([(idx // p ** i) % p for i in range(k)], axis=1)
        add = np.zeros((q, q), dtype=np.uint8)
        for b in range(q):
            s = (digits + digits[b]) % p
            add[:, b] = (s * (p ** np.arange(k))).sum(axis=1)
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                m = self._mul_slow(a, b)
                mul[a, b] = m
                mul[b, a] = m
        neg = np.array([self._encode([(-c) % p for c in self._coords(a)])
                        for a in range(q)], dtype=np.uint8)
        sub = add[:, neg]
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.tables = FieldTables(add=add, sub=sub, mul=mul, neg=neg, inv=inv)

    # -- scalar arithmetic on encoded elements ----------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.tables.add[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.tables.sub[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.tables.mul[a, b])

    def neg(self, a: int) -> int:
        return int(self.tables.neg[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return int(self.tables.inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, m: int) -> int:
        """Image of the integer m under Z -> F_p c F_q."""
        return m % self.p

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(self._coords(a))

    def element(self, a) -> "FieldElement":
        if isinstance(a, FieldElement):
            if a.field is not self:
                raise ValueError("element from a different field")
            return a
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"element encoding {a} outside [0, {self.q})")
        return FieldElement(self, a)

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def multiplicative_generator(self) -> int:
        """Smallest encoded element generating F_q^x."""
        target = self.q - 1
        for a in range(2, self.q):
            x, order = a, 1
            while x != 1:
                x = self.mul(x, a)
                order += 1
            if order == target:
                return a
        raise RuntimeError("no generator found")  # q = 3 handled by loop from 2

    def __repr__(self) -> str:
        if self.k == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.k}, modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElement:
    """A single element of F_q; thin wrapper over the integer encoding."""

    field: Field
    index: int

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("mixed-field operands")
            return other
        return self.field.element(other)

    def __add__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, self.field.add(self.index, o.index))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, self.field.sub(self.index, o.index))

    def __mul__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, self.field.mul(self.index, o.index))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, self.field.div(self.index, o.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.index, e))

    def __bool__(self) -> bool:
        return self.index != 0

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.index)

    def __repr__(self) -> str:
        return f"F{self.field.q}({self.index})"


def field_of(q: int) -> Field:
    """The interned field of order q (odd prime power), default modulus."""
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return Field(p, k)
        p += 1
    return Field(q)
