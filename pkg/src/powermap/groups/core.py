from __future__ import annotations

import numpy as np

from ..arith import factorize


class BudgetExceeded(ValueError):
    """Raised when an explicit construction would exceed its size budget."""


class FiniteGroup:
    """A finite group whose elements are the indices ``0 .. order-1``.

    Subclasses implement :meth:`product`; :meth:`mul` is the elementwise
    product of two index arrays and should be overridden with a vectorized
    version wherever the family allows it.
    """

    name: str
    order: int
    identity: int = 0

    def product(self, i: int, j: int) -> int:
        raise NotImplementedError

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        out = np.fromiter(
            (self.product(int(i), int(j)) for i, j in zip(x.ravel(), y.ravel())),
            dtype=np.int64,
            count=x.size,
        )
        return out.reshape(x.shape)

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"


def element_power(G: FiniteGroup, x: int, a: int) -> int:
    """x**a by square-and-multiply under G's product."""
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range for {G.name}")
    if a < 0:
        raise ValueError("exponent must be non-negative")
    result, base = G.identity, x
    while a:
        if a & 1:
            result = G.product(result, base)
        a >>= 1
        if a:
            base = G.product(base, base)
    return result


def power_all(G: FiniteGroup, a: int, xs: np.ndarray | None = None) -> np.ndarray:
    """Vectorized x**a for every x in ``xs`` (default: all elements)."""
    if a < 0:
        raise ValueError("exponent must be non-negative")
    base = np.arange(G.order, dtype=np.int64) if xs is None else np.asarray(xs, np.int64)
    result = np.full(base.shape, G.identity, dtype=np.int64)
    while a:
        if a & 1:
            result = G.mul(result, base)
        a >>= 1
        if a:
            base = G.mul(base, base)
    return result


def element_order(G: FiniteGroup, x: int) -> int:
    """Order of x, found by stripping prime factors from |G|."""
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range for {G.name}")
    n = G.order
    for p, e in factorize(G.order):
        for _ in range(e):
            if n % p == 0 and element_power(G, x, n // p) == G.identity:
                n //= p
            else:
                break
    return n


def orders_all(G: FiniteGroup) -> np.ndarray:
    """Order of every element, vectorized over the whole group.

    The p-part of |x| is the order of x**(|G|/p**e), which is found by
    repeated p-th powering.
    """
    n = G.order
    xs = np.arange(n, dtype=np.int64)
    orders = np.ones(n, dtype=np.int64)
    for p, e in factorize(n):
        y = power_all(G, n // p**e, xs)
        for _ in range(e):
            live = y != G.identity
            if not live.any():
                break
            orders[live] *= p
            y = power_all(G, p, y)
    return orders
