"""Dense polynomials over F_q.

Coefficients are stored lowest degree first as a tuple of encoded field
elements with no trailing zeros; the zero polynomial has an empty tuple.
The degree of the zero polynomial is reported as -1 (the math convention
is "-infinity"; -1 keeps indexing arithmetic simple and is never a legal
degree otherwise).

The text format used by the CLI and fixtures is
``q=9;modulus=1,0,1;f=2,0,1`` -- coefficients comma-separated lowest
first, field-element encodings as integers in [0, q); the ``modulus``
part (defining polynomial over F_p) is present only for extension fields.
"""

from __future__ import annotations

from collections.abc import Iterator

from .field import Field, FieldElement, field_of


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs) -> None:
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field is not field:
                    raise ValueError("mixed-field coefficient")
                vals.append(c.index)
            else:
                c = int(c)
                if not 0 <= c < field.q:
                    raise ValueError(f"coefficient encoding {c} outside [0, {field.q})")
                vals.append(c)
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Polynomial is immutable")

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def norm(self) -> int:
        """||f|| = q^deg f, and 0 for the zero polynomial."""
        return 0 if self.is_zero else self.field.q ** self.degree

    def lc(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def constant_term(self) -> int:
        return self.coeff(0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and other.field is self.field
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((id(self.field), self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def sort_key(self) -> tuple:
        """Deterministic total order: by degree, then coefficient encodings."""
        return (self.degree, self.coeffs[::-1])

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial) or other.field is not self.field:
            raise ValueError("mixed-field operands")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial(F, out)

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        if self.is_zero or other.is_zero:
            return Polynomial(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out)

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = c.index if isinstance(c, FieldElement) else int(c)
        return Polynomial(F, [F.mul(a, c) for a in self.coeffs])

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        dg = other.degree
        if self.degree < dg:
            return Polynomial(F, ()), self
        inv_lead = F.inv(other.lc())
        quot = [0] * (self.degree - dg + 1)
        for shift in range(self.degree - dg, -1, -1):
            c = F.mul(rem[shift + dg], inv_lead)
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b))
        return Polynomial(F, quot), Polynomial(F, rem[:dg])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial(self.field, (1,)) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        if self.is_monic:
            return self
        return self.scale(self.field.inv(self.lc()))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd; gcd(f, 0) = monic(f)."""
        self._check(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Polynomial":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(self.coeffs[i], F.from_int(i)))
        return Polynomial(F, out)

    def evaluate(self, x) -> int:
        """Value at an encoded element (or FieldElement); Horner."""
        F = self.field
        x = x.index if isinstance(x, FieldElement) else int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose_shift(self, c) -> "Polynomial":
        """f(t + c)."""
        F = self.field
        c = c.index if isinstance(c, FieldElement) else int(c)
        t_plus_c = Polynomial(F, (c, 1))
        acc = Polynomial(F, ())
        for coeff in reversed(self.coeffs):
            acc = acc * t_plus_c + Polynomial(F, (coeff,))
        return acc

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "Poly(" + " + ".join(terms) + f", q={self.field.q})"


# -- constructors and the wire format ---------------------------------------


def poly(field: Field, coeffs) -> Polynomial:
    return Polynomial(field, coeffs)


def t_power(field: Field, n: int) -> Polynomial:
    """The monomial t^n."""
    return Polynomial(field, [0] * n + [1])


def constant(field: Field, c) -> Polynomial:
    return Polynomial(field, (c,))


def format_poly(f: Polynomial) -> str:
    F = f.field
    parts = [f"q={F.q}"]
    if F.k > 1:
        parts.append("modulus=" + ",".join(str(c) for c in F.modulus))
    parts.append("f=" + ",".join(str(c) for c in f.coeffs))
    return ";".join(parts)


def parse_poly(text: str) -> Polynomial:
    fields = {}
    for chunk in text.strip().split(";"):
        if not chunk:
            continue
        key, _, val = chunk.partition("=")
        fields[key.strip()] = val.strip()
    if "q" not in fields or "f" not in fields:
        raise ValueError(f"polynomial text needs q= and f= parts: {text!r}")
    q = int(fields["q"])
    if "modulus" in fields:
        F0 = field_of(q)
        modulus = tuple(int(c) for c in fields["modulus"].split(","))
        F = Field(F0.p, F0.k, modulus)
    else:
        F = field_of(q)
    coeffs = [int(c) for c in fields["f"].split(",")] if fields["f"] else []
    return Polynomial(F, coeffs)


# -- enumeration of M_n and P_{<=h} ------------------------------------------


def monic_index(f: Polynomial) -> int:
    """Position of a monic f within M_n in enumeration order.

    The index encodes the non-leading coefficients base q, constant term
    least significant; monic_from_index inverts it.
    """
    if not f.is_monic:
        raise ValueError("monic polynomial expected")
    q = f.field.q
    return sum(c * q ** i for i, c in enumerate(f.coeffs[:-1]))


def monic_from_index(field: Field, n: int, idx: int) -> Polynomial:
    q = field.q
    coeffs = [(idx // q ** i) % q for i in range(n)] + [1]
    return Polynomial(field, coeffs)


def monic_polynomials(field: Field, n: int, start: int = 0,
                      stop: int | None = None) -> Iterator[Polynomial]:
    """All monic polynomials of degree n, in index order.

    ``start``/``stop`` select an index sub-range so sweeps can be
    partitioned into independent blocks (block boundaries at multiples of
    q^m split on leading coefficients).
    """
    if n < 0:
        return
    total = field.q ** n
    stop = total if stop is None else min(stop, total)
    for idx in range(start, stop):
        yield monic_from_index(field, n, idx)


def polynomials_up_to(field: Field, h: int) -> Iterator[Polynomial]:
    """All polynomials of degree <= h, including 0 (q^(h+1) of them)."""
    q = field.q
    for idx in range(q ** (h + 1)):
        coeffs = [(idx // q ** i) % q for i in range(h + 1)]
        yield Polynomial(field, coeffs)
