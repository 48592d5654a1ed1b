import numpy as np
import pytest

from fqstats.arith import mobius, is_squarefree
from fqstats.bulk import (BudgetExceeded, interval_sums, mobius_table,
                          normalized_unit_encodings, pair_correlation_count,
                          residue_indices, sieve_tables, squarefree_table,
                          ResidueRingBulk)
from fqstats.field import field_of
from fqstats.poly import (Polynomial, monic_from_index, monic_index,
                          monic_polynomials, t_power)

F3 = field_of(3)
F5 = field_of(5)
F9 = field_of(9)


@pytest.mark.parametrize("q,n", [(3, 1), (3, 2), (3, 5), (5, 3), (9, 3), (7, 2)])
def test_sieve_matches_per_polynomial_values(q, n):
    F = field_of(q)
    mu, sq = sieve_tables(F, n)
    for idx, f in enumerate(monic_polynomials(F, n)):
        assert mu[idx] == mobius(f), f
        assert sq[idx] == is_squarefree(f), f


def test_sieve_totals():
    for q, n in [(3, 6), (5, 4), (9, 4)]:
        F = field_of(q)
        mu, sq = sieve_tables(F, n)
        assert int(mu.sum()) == 0  # full Mobius sum vanishes for n >= 2
        assert int(sq.sum()) == q ** n - q ** (n - 1)


def test_interval_sums_against_direct_enumeration():
    from fqstats.intervals import interval_partition
    F, n, h = F3, 4, 1
    mu, _ = sieve_tables(F, n)
    sums = interval_sums(mu, 3, h)
    for b, (B, interval) in enumerate(interval_partition(F, n, h)):
        direct = sum(mobius(f) for f in interval.members())
        assert sums[b] == direct


def test_residue_indices_match_polynomial_mod():
    for F, n, Q in [(F3, 4, Polynomial(F3, (1, 1, 1))),
                    (F5, 3, Polynomial(F5, (2, 0, 1))),
                    (F9, 3, Polynomial(F9, (1, 3, 1)))]:
        enc = residue_indices(F, n, Q)
        q = F.q
        for idx in range(0, q ** n, 11):
            f = monic_from_index(F, n, idx)
            r = f % Q
            expected = sum(r.coeff(j) * q ** j for j in range(Q.degree))
            assert enc[idx] == expected


def test_normalized_unit_encodings():
    F, m, M = F5, 4, 3
    enc = normalized_unit_encodings(F, m, M)
    tM = t_power(F, M)
    for idx in range(0, 5 ** m, 7):
        f = monic_from_index(F, m, idx)
        if f.coeff(0) == 0:
            assert enc[idx] == -1
        else:
            g = (f.scale(F.inv(f.coeff(0)))) % tM
            expected = sum(g.coeff(j) * 5 ** j for j in range(M))
            assert enc[idx] == expected
            assert enc[idx] % 5 == 1  # constant term normalized to 1


def test_pair_correlation_small_direct():
    F, n = F3, 4
    J = Polynomial(F3, (1, 1))
    direct = 0
    for f in monic_polynomials(F, n):
        if is_squarefree(f) and is_squarefree(f + J):
            direct += 1
    assert pair_correlation_count(F, n, J) == direct
    with pytest.raises(ValueError):
        pair_correlation_count(F, 2, Polynomial(F3, ()))


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        sieve_tables(F3, 10, budget=1000)


def test_residue_ring_bulk_mul_and_units():
    Q = Polynomial(F3, (1, 0, 1, 1))  # monic cubic
    ring = ResidueRingBulk(F3, Q)
    rng = np.random.default_rng(3)
    a = rng.integers(0, ring.domain, 40)
    b = rng.integers(0, ring.domain, 40)
    prod = ring.mul(a.astype(np.int64), b.astype(np.int64))
    for x, y, z in zip(a, b, prod):
        fx, fy = ring.decode(int(x)), ring.decode(int(y))
        assert ring.decode(int(z)) == (fx * fy) % Q
    units = ring.unit_encodings()
    direct = [e for e in range(ring.domain)
              if ring.decode(e).gcd(Q).degree == 0 and not ring.decode(e).is_zero]
    assert sorted(units.tolist()) == direct


def test_residue_ring_units_prime_power_t():
    ring = ResidueRingBulk(F5, t_power(F5, 3))
    units = ring.unit_encodings()
    assert len(units) == 5 ** 2 * 4  # Phi(t^3) = q^2 (q-1)
    assert all(u % 5 != 0 for u in units.tolist())
