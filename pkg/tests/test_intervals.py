import pytest

from fqstats.field import field_of
from fqstats.intervals import (ProgressionSpec, ShortInterval,
                               enumerate_interval, interval_partition,
                               interval_to_progression, reverse, star)
from fqstats.poly import Polynomial, monic_from_index, monic_polynomials, t_power

F3 = field_of(3)
F5 = field_of(5)


def test_interval_membership_and_size():
    A = t_power(F3, 3)
    I = ShortInterval(A, 0)
    members = list(enumerate_interval(I))
    assert sorted(f.coeffs for f in members) == [(0, 0, 0, 1), (1, 0, 0, 1), (2, 0, 0, 1)]
    assert I.size == 3
    assert all(f in I for f in members)


@pytest.mark.parametrize("q,n,h", [(3, 4, 0), (3, 4, 2), (5, 3, 1), (9, 3, 1)])
def test_interval_cardinality(q, n, h):
    F = field_of(q)
    I = ShortInterval(t_power(F, n), h)
    members = list(I.members())
    assert len(members) == q ** (h + 1)
    assert len(set(members)) == q ** (h + 1)
    assert all(f.is_monic and f.degree == n for f in members)


def test_nearby_centers_give_identical_intervals():
    A1 = t_power(F3, 4)
    A2 = A1 + Polynomial(F3, (1, 2))  # differs in degree <= 1
    I1, I2 = ShortInterval(A1, 1), ShortInterval(A2, 1)
    assert I1 == I2
    assert set(I1.members()) == set(I2.members())
    I3 = ShortInterval(A1 + t_power(F3, 2), 1)
    assert set(I3.members()).isdisjoint(set(I1.members()))


def test_partition_covers_monics_exactly_once():
    for q, n, h in [(3, 4, 1), (3, 5, 2), (5, 3, 0)]:
        F = field_of(q)
        seen = []
        for B, interval in interval_partition(F, n, h):
            assert interval.index() == B
            seen.extend(interval.members())
        assert len(seen) == q ** n
        assert len(set(seen)) == q ** n


def test_reverse_basics():
    # theta_n(t^k) = t^(n-k) while (t^k)* = 1
    for k in range(4):
        assert reverse(t_power(F3, k), 5) == t_power(F3, 5 - k)
        assert star(t_power(F3, k)) == Polynomial(F3, (1,))
    with pytest.raises(ValueError):
        reverse(t_power(F3, 4), 3)


def test_star_involution_and_multiplicativity():
    for idx in range(0, 125, 7):
        f = monic_from_index(F5, 3, idx)
        g = monic_from_index(F5, 2, (idx * 3) % 25)
        assert star(f * g) == star(f) * star(g)
        if f.coeff(0) != 0:
            assert star(star(f)) == f


def test_reverse_bijection_onto_unit_constant_classes():
    # theta_m maps M_m onto {C of degree <= m with C(0) = 1}
    m = 3
    images = {reverse(B, m) for B in monic_polynomials(F3, m)}
    assert len(images) == 27
    assert all(C.coeff(0) == 1 for C in images)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_progression_bijection_exhaustive_q3_n5(h):
    n = 5
    for B in monic_polynomials(F3, n - h - 1):
        prog = interval_to_progression(B, n, h)
        interval = ShortInterval(t_power(F3, h + 1) * B, h)
        image = {reverse(f, n) for f in interval.members()}
        target = set(prog.members())
        assert image == target
        assert len(target) == 3 ** (h + 1)
        # members with nonzero constant term map to degree-exactly-n images
        for f in interval.members():
            g = reverse(f, n)
            assert (g.degree == n) == (f.coeff(0) != 0)


def test_progression_spec_membership():
    prog = interval_to_progression(monic_from_index(F3, 2, 5), 4, 1)
    assert prog.modulus == t_power(F3, 3)
    for g in prog.members():
        assert g in prog


def test_centering_collapse_for_h_n_minus_2():
    # N_mu(t^n + a t^(n-1); n-2) is independent of a when p does not divide n
    from fqstats.arith import mobius
    for q, n in [(3, 5), (5, 4)]:
        F = field_of(q)
        values = set()
        for a in range(q):
            A = t_power(F, n) + t_power(F, n - 1).scale(a)
            values.add(sum(mobius(f) for f in ShortInterval(A, n - 2).members()))
        assert len(values) == 1
