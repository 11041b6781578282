"""Arithmetic in F_q, q = p**c, as dense lookup tables.

An element is the integer ``sum(coef[i] * p**i)`` where ``coef`` are the
coefficients (lowest degree first) of its residue modulo the reduction
polynomial. So ``0`` is zero, ``1`` is one, and for c == 1 the encoding is the
plain residue.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..arith import factorize, is_prime


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num / den over F_p; den monic, coefficients low-first."""
    num = list(num)
    dd = len(den) - 1
    for shift in range(len(num) - 1 - dd, -1, -1):
        lead = num[shift + dd] % p
        if lead:
            for i, c in enumerate(den):
                num[shift + i] = (num[shift + i] - lead * c) % p
    rem = [c % p for c in num[:dd]]
    return rem + [0] * (dd - len(rem))


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides ``poly``."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


def least_irreducible(p: int, c: int) -> list[int]:
    """Lexicographically least monic irreducible of degree ``c`` over F_p.

    Candidates are ordered by their non-leading coefficients read from the
    highest degree down.
    """
    for high_first in itertools.product(range(p), repeat=c):
        poly = list(reversed(high_first)) + [1]
        if c == 1 or _is_irreducible(poly, p):
            return poly
    raise AssertionError("every degree has an irreducible polynomial")


@dataclass(frozen=True, eq=False)
class FieldContext:
    p: int
    c: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.c

    @classmethod
    def for_order(cls, q: int) -> FieldContext:
        f = factorize(q)
        if len(f) != 1:
            raise ValueError(f"{q} is not a prime power")
        p, c = f[0]
        return cls.build(p, c)

    @classmethod
    def build(cls, p: int, c: int) -> FieldContext:
        if not is_prime(p) or c < 1:
            raise ValueError(f"invalid field parameters p={p}, c={c}")
        modulus = least_irreducible(p, c)
        q = p**c
        digits = np.array(
            [[(x // p**i) % p for i in range(c)] for x in range(q)], dtype=np.int64
        )
        weights = p ** np.arange(c, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                prod = [0] * (2 * c - 1)
                for i in range(c):
                    for j in range(c):
                        prod[i + j] += int(digits[x, i] * digits[y, j])
                r = _poly_mod(prod, modulus, p) if c > 1 else [prod[0] % p]
                mul[x, y] = mul[y, x] = sum(v * p**i for i, v in enumerate(r))
        ctx = cls(p, c, tuple(modulus), add, mul, neg)
        ctx._verify()
        return ctx

    def _verify(self) -> None:
        q = self.q
        for x in range(1, q):
            if self.power(x, q - 1) != 1:
                raise AssertionError(f"x^(q-1) != 1 for x={x} in F_{q}")
        # Every nonzero element must be invertible: rows of mul are permutations.
        if any(len(set(self.mul[x, 1:].tolist())) != q - 1 for x in range(1, q)):
            raise AssertionError(f"F_{q} multiplication is not a group on units")

    def power(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = int(self.mul[r, x])
            x = int(self.mul[x, x])
            k >>= 1
        return r

    def sub(self, x, y):
        return self.add[x, self.neg[y]]
