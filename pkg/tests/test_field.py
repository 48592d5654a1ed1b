import numpy as np
import pytest

from fqstats.field import Field, field_of, default_modulus


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27])
def test_field_axioms_exhaustive(q):
    F = field_of(q)
    assert F.q == q
    for a in F.elements():
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a != 0:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    # associativity / commutativity spot grid
    for a in range(min(q, 9)):
        for b in range(min(q, 9)):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in range(min(q, 5)):
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        field_of(4)


def test_interning():
    assert field_of(9) is field_of(9)
    assert Field(3, 2) is field_of(9)
    assert field_of(3) is not field_of(9)


def test_default_modulus_is_irreducible_and_first():
    mod = default_modulus(3, 2)
    assert mod == (1, 0, 1)  # t^2 + 1 over F_3: candidates t^2, t^2+1 -> first wins
    F = field_of(9)
    assert F.modulus == (1, 0, 1)


def test_frobenius_fixed_subfield():
    F = field_of(9)
    fixed = [a for a in F.elements() if F.pow(a, 3) == a]
    assert sorted(fixed) == [0, 1, 2]  # the prime subfield under our encoding


def test_tables_match_scalar_ops():
    F = field_of(27)
    T = F.tables
    rng = np.random.default_rng(0)
    a = rng.integers(0, 27, size=50)
    b = rng.integers(0, 27, size=50)
    for x, y in zip(a, b):
        assert T.add[x, y] == F.add(int(x), int(y))
        assert T.mul[x, y] == F.mul(int(x), int(y))
        assert T.sub[x, y] == F.sub(int(x), int(y))


def test_field_element_wrapper():
    F = field_of(5)
    x = F.element(3)
    y = F.element(4)
    assert (x + y).index == 2
    assert (x * y).index == 2
    assert (x / y).index == F.div(3, 4)
    assert (-x).index == 2
    assert (x ** 4).index == 1
    assert bool(F.element(0)) is False


def test_multiplicative_generator():
    for q in (3, 5, 9, 13):
        F = field_of(q)
        g = F.multiplicative_generator()
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = F.mul(x, g)
            seen.add(x)
        assert len(seen) == q - 1
