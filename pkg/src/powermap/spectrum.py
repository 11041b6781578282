"""Order spectra: how many elements of a group have each order."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .arith import divisors, euler_phi, factorize
from .groups import LIMITS, BudgetExceeded, FiniteGroup, orders_all

SYMMETRIC_MAX = 40


@dataclass(frozen=True)
class OrderSpectrum:
    """Exact map ``d -> w(d)`` for a group of the given order.

    Only orders that occur are stored. Construction checks that the counts
    sum to the group order, that there is one identity, and that each w(d)
    is a multiple of phi(d).
    """

    order: int
    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = {int(d): int(w) for d, w in sorted(self.counts.items()) if w}
        object.__setattr__(self, "counts", counts)
        if sum(counts.values()) != self.order:
            raise ValueError(f"counts sum to {sum(counts.values())}, not {self.order}")
        if counts.get(1) != 1:
            raise ValueError("a group has exactly one element of order 1")
        for d, w in counts.items():
            if w % euler_phi(d):
                raise ValueError(f"w({d}) = {w} is not a multiple of phi({d})")

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def items(self):
        return self.counts.items()

    @property
    def exponent(self) -> int:
        return math.lcm(*self.counts)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{d}: {w}" for d, w in self.counts.items()) + "}"


def spectrum_bruteforce(G: FiniteGroup) -> OrderSpectrum:
    if G.order > LIMITS["elements"]:
        raise BudgetExceeded(f"{G.name} has more than {LIMITS['elements']} elements")
    orders, counts = np.unique(orders_all(G), return_counts=True)
    return OrderSpectrum(G.order, dict(zip(orders.tolist(), counts.tolist())))


def spectrum_cyclic(n: int) -> OrderSpectrum:
    return OrderSpectrum(n, {d: euler_phi(d) for d in divisors(factorize(n))})


def spectrum_dihedral(n: int) -> OrderSpectrum:
    """Spectrum of the dihedral group of order 2n: C_n plus n reflections."""
    if n < 3:
        raise ValueError(f"dihedral spectrum needs n >= 3, got {n}")
    counts = dict(spectrum_cyclic(n).counts)
    counts[2] = counts.get(2, 0) + n
    return OrderSpectrum(2 * n, counts)


def partitions(n: int) -> Iterator[list[tuple[int, int]]]:
    """Integer partitions of n in descending lexicographic order.

    Each partition is yielded as ``[(part, multiplicity), ...]`` with parts
    decreasing.
    """
    if n == 0:
        yield []
        return
    # Multiplicity encoding of the current partition, largest part first.
    parts = [(n, 1)]
    while True:
        yield list(parts)
        # Remove all 1s, then decrement the smallest part > 1.
        ones = 0
        if parts[-1][0] == 1:
            ones = parts.pop()[1]
        if not parts:
            return
        part, mult = parts.pop()
        if mult > 1:
            parts.append((part, mult - 1))
        rest = part + ones
        smaller = part - 1
        q, r = divmod(rest, smaller)
        parts.append((smaller, q))
        if r:
            parts.append((r, 1))


def spectrum_symmetric(n: int) -> OrderSpectrum:
    """Spectrum of S_n by cycle type.

    A partition with multiplicities c_i accounts for n! / prod(c_i! * i**c_i)
    permutations, all of order lcm(parts).
    """
    if not 1 <= n <= SYMMETRIC_MAX:
        raise ValueError(f"symmetric spectrum supports 1 <= n <= {SYMMETRIC_MAX}, got {n}")
    nfact = math.factorial(n)
    counts: dict[int, int] = {}
    for lam in partitions(n):
        denom = 1
        order = 1
        for part, mult in lam:
            denom *= math.factorial(mult) * part**mult
            order = math.lcm(order, part)
        counts[order] = counts.get(order, 0) + nfact // denom
    return OrderSpectrum(nfact, counts)


def spectrum_sl2(q: int) -> OrderSpectrum:
    """Spectrum of SL_2(F_q), q odd, from its conjugacy classes.

    Split semisimple classes take the order of their eigenvalue in the
    cyclic group F_q^*; non-split ones the order in the norm-one subgroup of
    F_{q^2}^* (cyclic of order q+1); the unipotent classes contribute orders
    p and 2p.
    """
    f = factorize(q)
    if q < 3 or q % 2 == 0 or len(f) != 1:
        raise ValueError(f"sl2 spectrum needs an odd prime power q >= 3, got {q}")
    p = f[0][0]
    counts: dict[int, int] = {1: 1, 2: 1}

    def add(d, w):
        counts[d] = counts.get(d, 0) + w

    for d in divisors(factorize(q - 1)):
        if d > 2:
            add(d, euler_phi(d) // 2 * q * (q + 1))
    for d in divisors(factorize(q + 1)):
        if d > 2:
            add(d, euler_phi(d) // 2 * q * (q - 1))
    add(p, q * q - 1)
    add(2 * p, q * q - 1)
    return OrderSpectrum(q * (q * q - 1), counts)


def spectrum_heisenberg(p: int) -> OrderSpectrum:
    """Heisenberg group mod an odd prime p has exponent p."""
    if p % 2 == 0 or len(factorize(p)) != 1 or factorize(p)[0][1] != 1:
        raise ValueError(f"heisenberg spectrum needs an odd prime, got {p}")
    return OrderSpectrum(p**3, {1: 1, p: p**3 - 1})


def spectrum_product(s1: OrderSpectrum, s2: OrderSpectrum) -> OrderSpectrum:
    """Spectrum of a direct product: orders combine by lcm."""
    counts: dict[int, int] = {}
    for d1, w1 in s1.items():
        for d2, w2 in s2.items():
            k = math.lcm(d1, d2)
            counts[k] = counts.get(k, 0) + w1 * w2
    return OrderSpectrum(s1.order * s2.order, counts)


def b_count(s: OrderSpectrum, m: int) -> int:
    """Number of elements of order at least m."""
    return sum(w for d, w in s.items() if d >= m)
