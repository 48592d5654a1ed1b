import pytest

from fqstats.arith import (MOBIUS, SQUAREFREE, CycleType, check_interval_class,
                           cycle_type, discriminant, is_squarefree, mobius,
                           quadratic_character, resultant)
from fqstats.field import field_of
from fqstats.poly import Polynomial, monic_polynomials, t_power

F3 = field_of(3)
F5 = field_of(5)
F7 = field_of(7)
F9 = field_of(9)


def test_mobius_basics():
    for F in (F3, F5, F9):
        assert mobius(t_power(F, 1)) == -1
    g = Polynomial(F3, (2, 1))
    assert mobius(Polynomial(F3, (1, 1)) ** 2 * g) == 0


@pytest.mark.parametrize("q", [3, 5, 9])
def test_mobius_full_sums(q):
    # sum over M_1 is -q; zero for 2 <= n <= 6 (5 for q = 9 to keep it quick)
    F = field_of(q)
    assert sum(mobius(f) for f in monic_polynomials(F, 1)) == -q
    top = 6 if q <= 5 else 4
    for n in range(2, top + 1):
        assert sum(mobius(f) for f in monic_polynomials(F, n)) == 0


def test_squarefree_count_degree2_q3():
    # exactly the 3 squares of linears fail among the 9 monic quadratics
    flags = [is_squarefree(f) for f in monic_polynomials(F3, 2)]
    assert sum(flags) == 6


@pytest.mark.parametrize("q", [3, 5, 9])
def test_squarefree_total_count(q):
    F = field_of(q)
    for n in (2, 3):
        count = sum(1 for f in monic_polynomials(F, n) if is_squarefree(f))
        assert count == q ** n - q ** (n - 1)


def test_pth_power_trinomials_never_squarefree():
    # t^p + b has zero derivative, hence is a p-th power
    for F in (F3, F9):
        for b in range(F.q):
            f = t_power(F, F.p) + Polynomial(F, (b,))
            assert not is_squarefree(f)


def test_quadratic_character_basics():
    for q in (3, 5, 7, 9):
        F = field_of(q)
        assert quadratic_character(1, F) == 1
        assert quadratic_character(0, F) == 0
        values = [quadratic_character(c, F) for c in F.units()]
        assert values.count(-1) == (q - 1) // 2
        assert values.count(1) == (q - 1) // 2
        squares = {F.mul(c, c) for c in F.units()}
        minus_one = F.neg(1)
        assert (quadratic_character(minus_one, F) == 1) == (q % 4 == 1)
        for c in F.units():
            assert (quadratic_character(c, F) == 1) == (c in squares)


def test_resultant_product_rule():
    f = Polynomial(F5, (1, 2, 1, 1))
    g = Polynomial(F5, (3, 1))
    h = Polynomial(F5, (2, 0, 1))
    lhs = resultant(f, g * h)
    rhs = F5.mul(resultant(f, g), resultant(f, h))
    assert lhs == rhs
    # linear case: Res(f, t - a) = f(a) * weight; degree-0 check via roots
    a = 2
    lin = Polynomial(F5, (F5.neg(a), 1))
    assert resultant(lin, f) == f.evaluate(a)


def test_discriminant_quadratic_formula():
    # disc(t^2 + at + b) = a^2 - 4b, exhaustively over q in {3, 5, 9}
    for q in (3, 5, 9):
        F = field_of(q)
        four = F.from_int(4)
        for a in F.elements():
            for b in F.elements():
                f = Polynomial(F, (b, a, 1))
                expect = F.sub(F.mul(a, a), F.mul(four, b))
                assert discriminant(f).index == expect


def test_discriminant_repeated_root_vanishes():
    f = Polynomial(F5, (1, 1)) ** 2 * Polynomial(F5, (2, 1))
    assert discriminant(f).index == 0


@pytest.mark.parametrize("q,n", [(3, 3), (5, 3), (9, 3), (3, 5), (7, 4)])
def test_trinomial_discriminant(q, n):
    # disc(t^n + a t + b) = (-1)^(n(n-1)/2) (n^n b^(n-1) + (1-n)^(n-1) a^n)
    F = field_of(q)
    sign = F.from_int((-1) ** (n * (n - 1) // 2))
    nn = F.pow(F.from_int(n), n)
    mm = F.pow(F.from_int(1 - n), n - 1)
    for a in F.elements():
        for b in F.elements():
            f = t_power(F, n) + Polynomial(F, (b, a))
            expect = F.mul(sign, F.add(F.mul(nn, F.pow(b, n - 1)),
                                       F.mul(mm, F.pow(a, n))))
            assert discriminant(f).index == expect


@pytest.mark.parametrize("q,max_n", [(3, 5), (5, 4), (7, 3), (9, 3)])
def test_pellet_identity_exhaustive(q, max_n):
    # mu(f) = (-1)^deg f * chi2(disc f), chi2(0) = 0 covering non-squarefree f
    F = field_of(q)
    for n in range(1, max_n + 1):
        for f in monic_polynomials(F, n):
            assert mobius(f) == (-1) ** n * quadratic_character(discriminant(f))


def test_shift_invariance_of_mobius():
    for q in (3, 5, 9):
        F = field_of(q)
        for f in monic_polynomials(F, 3):
            m = mobius(f)
            for c in range(1, q):
                assert mobius(f.compose_shift(c)) == m


def test_mobius_square_divisor_identity():
    # sum over d with d^2 | f of mu(d) equals the squarefree indicator
    from fqstats.factor import factor
    for q, n_top in [(3, 6), (9, 3)]:
        F = field_of(q)
        for n in range(1, n_top + 1):
            for f in monic_polynomials(F, n):
                total = 1  # d = 1 term
                for dd in range(1, n // 2 + 1):
                    for d in monic_polynomials(F, dd):
                        if (f % (d * d)).is_zero:
                            total += mobius(d)
                assert total == SQUAREFREE(f)


def test_cycle_type_and_sign():
    f = t_power(F3, 1) * Polynomial(F3, (1, 1))  # t(t+1)
    ct = cycle_type(f)
    assert ct.counts == (2, 0)
    assert ct.sign() == 1
    assert mobius(f) == 1
    g = Polynomial(F5, (2, 0, 1))  # irreducible quadratic over F_5? t^2+2
    if len(ct.counts) and g.degree == 2:
        from fqstats.factor import is_irreducible
        assert is_irreducible(g)
        assert cycle_type(g).counts == (0, 1)


def test_sign_identity_squarefree_degree4_q5():
    # mu(f) = (-1)^n sign(cycle_type(f)) over all squarefree f in M_4, q=5
    for f in monic_polynomials(F5, 4):
        if is_squarefree(f):
            assert mobius(f) == (-1) ** 4 * cycle_type(f).sign()


def test_cycle_type_degree_partition():
    for f in monic_polynomials(F3, 4):
        ct = cycle_type(f)
        assert ct.degree == 4


def test_interval_class_checks_pass_for_builtins():
    check_interval_class(MOBIUS, F3, max_degree=3)
    check_interval_class(SQUAREFREE, F3, max_degree=3)
    check_interval_class(MOBIUS, F9, max_degree=2)
