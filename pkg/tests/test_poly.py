import pytest
from hypothesis import given, settings, strategies as st

from fqstats.field import field_of
from fqstats.poly import (Polynomial, format_poly, monic_from_index,
                          monic_index, monic_polynomials, parse_poly,
                          polynomials_up_to, t_power)

F3 = field_of(3)
F9 = field_of(9)


def P(field, *coeffs):
    return Polynomial(field, coeffs)


def test_trim_and_degree():
    assert P(F3, 0, 0, 0).is_zero
    assert P(F3, 0).is_zero
    assert P(F3).degree == -1
    assert P(F3, 1).degree == 0
    assert P(F3, 0, 0, 2).degree == 2
    assert P(F3, 1, 1).norm() == 3
    assert P(F3).norm() == 0


def test_divmod_exact_square():
    # (t+1)^2 = t^2 + 2t + 1 over F_3
    f = P(F3, 1, 2, 1)
    g = P(F3, 1, 1)
    quo, rem = divmod(f, g)
    assert quo == g and rem.is_zero


def test_divmod_generic():
    f = P(F9, 3, 7, 1, 5, 1)
    g = P(F9, 2, 0, 4)
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.degree < g.degree
    with pytest.raises(ZeroDivisionError):
        divmod(f, P(F9))


def test_gcd_identity_with_zero():
    f = P(F3, 2, 1, 2)
    assert f.gcd(P(F3)) == f.monic()
    assert P(F3).gcd(f) == f.monic()


def test_derivative_of_pth_power_vanishes():
    for F in (F3, F9):
        f = t_power(F, F.p)
        assert f.derivative().is_zero
    assert P(F3, 1, 1, 1).derivative() == P(F3, 1, 2)


def test_compose_shift():
    f = P(F3, 1, 0, 1)  # t^2 + 1
    g = f.compose_shift(1)  # (t+1)^2 + 1 = t^2 + 2t + 2
    assert g == P(F3, 2, 2, 1)
    for c in range(3):
        shifted = f.compose_shift(c)
        for x in range(3):
            assert shifted.evaluate(x) == f.evaluate(F3.add(x, c))


def test_enumeration_counts():
    for q, n in [(3, 4), (9, 3)]:
        F = field_of(q)
        polys = list(monic_polynomials(F, n))
        assert len(polys) == q ** n
        assert len(set(polys)) == q ** n
        assert all(f.is_monic and f.degree == n for f in polys)
    assert len(list(polynomials_up_to(F3, 2))) == 27


def test_block_partition_of_enumeration():
    F = field_of(5)
    full = list(monic_polynomials(F, 3))
    blocks = [list(monic_polynomials(F, 3, start=i * 25, stop=(i + 1) * 25))
              for i in range(5)]
    assert [f for b in blocks for f in b] == full


def test_monic_index_roundtrip():
    F = field_of(9)
    for idx in range(0, 9 ** 3, 37):
        f = monic_from_index(F, 3, idx)
        assert monic_index(f) == idx


def test_text_format_roundtrip():
    f = P(F9, 2, 0, 1)
    text = format_poly(f)
    assert text == "q=9;modulus=1,0,1;f=2,0,1"
    assert parse_poly(text) == f
    g = P(F3, 0, 2, 1)
    assert parse_poly(format_poly(g)) == g
    assert parse_poly("q=5;f=1,1").field.q == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3 ** 5 - 1), st.integers(0, 3 ** 4 - 1), st.integers(0, 3 ** 3 - 1))
def test_ring_laws(a, b, c):
    f = monic_from_index(F3, 5, a)
    g = monic_from_index(F3, 4, b)
    h = monic_from_index(F3, 3, c)
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
