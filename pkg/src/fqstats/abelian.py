"""Generic decomposition of a finite abelian group into cyclic factors.

The group is handed over as an array of encoded elements plus vectorized
multiply/power callables (see bulk.ResidueRingBulk).  The decomposition
works Sylow subgroup by Sylow subgroup; inside a p-group the basis is
grown by repeatedly adjoining an element of maximal order in the current
quotient, adjusted so the extension stays a direct product.  A complete
discrete-log table (element encoding -> flat coordinate index in C order
over the cyclic factor orders) is built along the way, which is what the
character-sum FFTs consume.

Everything is deterministic: candidates are scanned in sorted encoding
order and ties break to the smallest encoding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianBasis:
    """Cyclic decomposition with a full dlog table.

    orders[i] is the order of gens[i]; dlog_flat[enc] is the C-order flat
    index of the coordinate vector of the element encoded enc (so shape =
    orders), or -1 for encodings outside the group.
    """

    orders: tuple[int, ...]
    gens: tuple[int, ...]
    dlog_flat: np.ndarray
    size: int

    @property
    def shape(self) -> tuple[int, ...]:
        return self.orders if self.orders else (1,)

    def coords_of(self, enc: int) -> tuple[int, ...]:
        flat = int(self.dlog_flat[enc])
        if flat < 0:
            raise KeyError(f"encoding {enc} not in the group")
        if not self.orders:
            return ()
        return tuple(int(c) for c in np.unravel_index(flat, self.orders))

    def flat_of_exponents(self, exponents: tuple[int, ...]) -> int:
        if not self.orders:
            return 0
        return int(np.ravel_multi_index(exponents, self.orders))


def _p_group_basis(ring, elements: np.ndarray, p: int
                   ) -> tuple[list[int], list[int], np.ndarray, list[int]]:
    """Basis of an abelian p-group given as sorted encoded elements.

    Returns (gens, orders, covered_elements, coords) where coords is the
    per-element coordinate matrix aligned with covered_elements.
    """
    size = len(elements)
    # row index into the covered set, -1 = not covered yet
    row_of = np.full(ring.domain, -1, dtype=np.int64)
    covered = np.array([ring.identity], dtype=np.int64)
    coords = np.zeros((1, 0), dtype=np.int64)
    row_of[ring.identity] = 0
    gens: list[int] = []
    orders: list[int] = []

    # p-th power map restricted to the subgroup, as a gather table
    pmap = np.full(ring.domain, -1, dtype=np.int64)
    pmap[elements] = ring.pow(elements, p)

    while len(covered) < size:
        cur = elements.copy()
        steps = np.zeros(size, dtype=np.int64)
        active = row_of[cur] < 0
        while active.any():
            cur[active] = pmap[cur[active]]
            steps[active] += 1
            active = row_of[cur] < 0
        jmax = int(steps.max())
        x = int(elements[steps == jmax].min())
        b = p ** jmax
        # x^b lands in the covered subgroup; divisibility of its coordinates
        # by b is guaranteed by the maximality of jmax
        xb = int(ring.pow(np.array([x], dtype=np.int64), b)[0])
        c = coords[row_of[xb]]
        assert all(int(ci) % b == 0 for ci in c), "non-maximal quotient order"
        y = np.array([x], dtype=np.int64)
        for g, d, ci in zip(gens, orders, c):
            e = (-(int(ci) // b)) % d
            if e:
                y = ring.mul(y, ring.pow(np.array([g], dtype=np.int64), e))
        y = int(y[0])
        assert int(ring.pow(np.array([y], dtype=np.int64), b)[0]) == ring.identity

        gens.append(y)
        orders.append(b)
        coords = np.hstack([coords, np.zeros((len(covered), 1), dtype=np.int64)])
        L = len(covered)
        level = covered.copy()
        level_coords = coords
        y_bcast = np.full(L, y, dtype=np.int64)
        new_elems = [covered]
        new_coords = [coords]
        for j in range(1, b):
            level = ring.mul(level, y_bcast)
            level_coords = level_coords.copy()
            level_coords[:, -1] = j
            assert (row_of[level] == -1).all(), "extension is not direct"
            row_of[level] = np.arange(L * j, L * (j + 1))
            new_elems.append(level)
            new_coords.append(level_coords)
        covered = np.concatenate(new_elems)
        coords = np.vstack(new_coords)
    return gens, orders, covered, coords


def build_abelian_basis(ring, elements: np.ndarray) -> AbelianBasis:
    """Decompose the group of the given encoded elements over the ring."""
    elements = np.unique(np.asarray(elements, dtype=np.int64))
    n = len(elements)
    if n == 1:
        dlog = np.full(ring.domain, -1, dtype=np.int64)
        dlog[elements[0]] = 0
        return AbelianBasis(orders=(), gens=(), dlog_flat=dlog, size=1)

    all_orders: list[int] = []
    all_gens: list[int] = []
    flat = np.zeros(n, dtype=np.int64)
    for p, e in sorted(_factorize(n).items()):
        pe = p ** e
        cof = n // pe
        if cof == 1:
            proj = elements
        else:
            # CRT exponent: c = cof * (cof^-1 mod p^e) is 1 mod p^e, 0 mod cof
            c = cof * pow(cof, -1, pe)
            proj = ring.pow(elements, c)
        sylow = np.unique(proj)
        gens, orders, covered, coords = _p_group_basis(ring, sylow, p)
        if not gens:
            continue
        row_of = np.full(ring.domain, -1, dtype=np.int64)
        row_of[covered] = np.arange(len(covered))
        local_flat = np.zeros(len(covered), dtype=np.int64)
        for j in range(len(orders)):
            local_flat = local_flat * orders[j] + coords[:, j]
        part = local_flat[row_of[proj]]
        flat = flat * len(covered) + part
        all_gens.extend(gens)
        all_orders.extend(orders)

    dlog = np.full(ring.domain, -1, dtype=np.int64)
    dlog[elements] = flat
    return AbelianBasis(orders=tuple(all_orders), gens=tuple(all_gens),
                        dlog_flat=dlog, size=n)
