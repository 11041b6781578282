"""Built-in group families and permutation-group closures.

Element encodings:

* cyclic(n): the residue ``k`` (additive group Z/nZ).
* dihedral(n): ``r**k s**e`` is ``k + n*e`` so rotations come first.
* symmetric(n): lexicographic rank of the image tuple; 0 is the identity.
* sl2(q): matrices ``[[a, b], [c, d]]`` sorted by the row-major code
  ``((a*q + b)*q + c)*q + d`` over the field encoding of :mod:`.field`.
* heisenberg(p): ``[[1, x, z], [0, 1, y], [0, 0, 1]]`` is ``(x*p + y)*p + z``.
* product(G_1, ..., G_k): mixed radix, the first factor most significant.
* permutation closures: breadth-first discovery order from the identity.

Permutations compose left to right: ``(g*h)(k) = h(g(k))``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from functools import cached_property

import numpy as np

from ..arith import is_prime
from .core import BudgetExceeded, FiniteGroup
from .field import FieldContext

LIMITS = {
    "cyclic": 5000,
    "dihedral": 5000,
    "symmetric": 8,
    "sl2": 13,
    "closure": 10**5,
    "table": 4096,
    "elements": 10**6,
}


class CyclicGroup(FiniteGroup):
    def __init__(self, n: int):
        if not 1 <= n <= LIMITS["cyclic"]:
            raise BudgetExceeded(f"cyclic({n}) outside explicit range 1..{LIMITS['cyclic']}")
        self.n = self.order = n
        self.name = f"cyclic({n})"

    def product(self, i, j):
        return (i + j) % self.n

    def mul(self, x, y):
        return (np.asarray(x) + np.asarray(y)) % self.n


class DihedralGroup(FiniteGroup):
    """Symmetries of the regular n-gon, order 2n."""

    def __init__(self, n: int):
        if not 1 <= n <= LIMITS["dihedral"]:
            raise BudgetExceeded(f"dihedral({n}) outside explicit range 1..{LIMITS['dihedral']}")
        self.n = n
        self.order = 2 * n
        self.name = f"dihedral({n})"

    def product(self, i, j):
        n = self.n
        k1, e1 = i % n, i // n
        k2, e2 = j % n, j // n
        k = (k1 - k2 if e1 else k1 + k2) % n
        return k + n * (e1 ^ e2)

    def mul(self, x, y):
        n = self.n
        x, y = np.asarray(x), np.asarray(y)
        k1, e1 = x % n, x // n
        k2, e2 = y % n, y // n
        k = (k1 + np.where(e1 == 1, -k2, k2)) % n
        return k + n * (e1 ^ e2)


class SymmetricGroup(FiniteGroup):
    def __init__(self, n: int):
        if not 1 <= n <= LIMITS["symmetric"]:
            raise BudgetExceeded(f"symmetric({n}) outside explicit range 1..{LIMITS['symmetric']}")
        self.n = n
        self.order = math.factorial(n)
        self.name = f"symmetric({n})"
        self.perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        self.perms.flags.writeable = False
        self._fact = np.array(
            [math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64
        )

    def rank(self, rows: np.ndarray) -> np.ndarray:
        """Lexicographic rank of each permutation row (Lehmer code)."""
        rows = np.atleast_2d(rows)
        n = self.n
        ranks = np.zeros(rows.shape[0], dtype=np.int64)
        for i in range(n - 1):
            smaller = (rows[:, i + 1 :] < rows[:, i : i + 1]).sum(axis=1)
            ranks += smaller * self._fact[i]
        return ranks

    def index_of(self, perm) -> int:
        return int(self.rank(np.asarray(perm, dtype=np.int64))[0])

    def product(self, i, j):
        return int(self.rank(self.perms[j][self.perms[i]])[0])

    def mul(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        px = self.perms[x.ravel()]
        py = self.perms[y.ravel()]
        comp = np.take_along_axis(py, px, axis=1)
        return self.rank(comp).reshape(x.shape)


class SL2Group(FiniteGroup):
    """2x2 determinant-one matrices over F_q, q odd."""

    def __init__(self, q: int):
        if q % 2 == 0:
            raise ValueError(f"sl2({q}): q must be odd")
        if not 3 <= q <= LIMITS["sl2"]:
            raise BudgetExceeded(f"sl2({q}) outside explicit range 3..{LIMITS['sl2']}")
        self.field = F = FieldContext.for_order(q)
        self.q = q
        self.name = f"sl2({q})"
        g = np.arange(q)
        a, b, c, d = (m.ravel() for m in np.meshgrid(g, g, g, g, indexing="ij"))
        det = F.add[F.mul[a, d], F.neg[F.mul[b, c]]]
        keep = det == 1
        self.entries = np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1)
        self.entries.flags.writeable = False
        self.order = len(self.entries)
        if self.order != q * (q * q - 1):
            raise AssertionError(f"|SL2(F_{q})| = {self.order}, expected q(q^2-1)")
        codes = self._code(self.entries)
        self._lookup = np.full(q**4, -1, dtype=np.int64)
        self._lookup[codes] = np.arange(self.order)
        self.identity = self.index_of(((1, 0), (0, 1)))

    def _code(self, e: np.ndarray) -> np.ndarray:
        q = self.q
        return ((e[:, 0] * q + e[:, 1]) * q + e[:, 2]) * q + e[:, 3]

    def index_of(self, matrix) -> int:
        (a, b), (c, d) = matrix
        q = self.q
        if self.field.c == 1:
            a, b, c, d = (v % q for v in (a, b, c, d))
        idx = int(self._lookup[((a * q + b) * q + c) * q + d])
        if idx < 0:
            raise ValueError(f"{matrix} is not in SL2(F_{q})")
        return idx

    def matrix(self, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = (int(v) for v in self.entries[i])
        return ((a, b), (c, d))

    def mul(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        F = self.field
        e1 = self.entries[x.ravel()]
        e2 = self.entries[y.ravel()]
        add, mul = F.add, F.mul
        prod = np.stack(
            [
                add[mul[e1[:, 0], e2[:, 0]], mul[e1[:, 1], e2[:, 2]]],
                add[mul[e1[:, 0], e2[:, 1]], mul[e1[:, 1], e2[:, 3]]],
                add[mul[e1[:, 2], e2[:, 0]], mul[e1[:, 3], e2[:, 2]]],
                add[mul[e1[:, 2], e2[:, 1]], mul[e1[:, 3], e2[:, 3]]],
            ],
            axis=1,
        )
        return self._lookup[self._code(prod)].reshape(x.shape)

    def product(self, i, j):
        return int(self.mul(np.array([i]), np.array([j]))[0])


class HeisenbergGroup(FiniteGroup):
    """Upper unitriangular 3x3 matrices over F_p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"heisenberg({p}): p must be prime")
        if p**3 > LIMITS["elements"]:
            raise BudgetExceeded(f"heisenberg({p}) has more than {LIMITS['elements']} elements")
        self.p = p
        self.order = p**3
        self.name = f"heisenberg({p})"

    def mul(self, u, v):
        p = self.p
        u, v = np.asarray(u), np.asarray(v)
        x1, y1, z1 = u // (p * p), (u // p) % p, u % p
        x2, y2, z2 = v // (p * p), (v // p) % p, v % p
        return (((x1 + x2) % p) * p + (y1 + y2) % p) * p + (z1 + z2 + x1 * y2) % p

    def product(self, i, j):
        return int(self.mul(i, j))


class ProductGroup(FiniteGroup):
    def __init__(self, factors: list[FiniteGroup]):
        if not factors:
            raise ValueError("product of no groups")
        self.factors = list(factors)
        self.order = math.prod(f.order for f in factors)
        if self.order > LIMITS["elements"]:
            raise BudgetExceeded(f"product has {self.order} > {LIMITS['elements']} elements")
        self.name = "product(" + ", ".join(f.name for f in factors) + ")"
        strides = []
        s = 1
        for f in reversed(self.factors):
            strides.append(s)
            s *= f.order
        self.strides = strides[::-1]
        self.identity = self.combine([f.identity for f in self.factors])

    def split(self, x):
        return [(np.asarray(x) // s) % f.order for f, s in zip(self.factors, self.strides)]

    def combine(self, parts):
        return sum(np.asarray(c) * s for c, s in zip(parts, self.strides))

    def mul(self, x, y):
        parts = [
            f.mul(cx, cy) for f, cx, cy in zip(self.factors, self.split(x), self.split(y))
        ]
        return np.asarray(self.combine(parts), dtype=np.int64)

    def product(self, i, j):
        return int(self.mul(i, j))


class PermutationGroup(FiniteGroup):
    """Group generated by permutations of ``{0..degree-1}``, closed by BFS."""

    def __init__(self, degree: int, generators, name: str | None = None):
        gens = [tuple(int(v) for v in g) for g in generators]
        if not gens:
            raise ValueError("empty generator set")
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {list(g)}")
        self.degree = degree
        self.generators = gens
        self.name = name or f"permutation(degree={degree}, gens={len(gens)})"

        ident = tuple(range(degree))
        index = {ident: 0}
        found = [ident]
        queue = deque([ident])
        budget = LIMITS["closure"]
        while queue:
            g = queue.popleft()
            for s in gens:
                h = tuple(s[k] for k in g)
                if h not in index:
                    if len(found) >= budget:
                        raise BudgetExceeded(f"closure exceeds {budget} elements")
                    index[h] = len(found)
                    found.append(h)
                    queue.append(h)
        self.order = len(found)
        self.perms = np.array(found, dtype=np.int64).reshape(self.order, degree)
        self.perms.flags.writeable = False
        self._index = index
        self._prepare_lookup()

    def _prepare_lookup(self) -> None:
        # Greedy base: points whose images separate all elements, so each
        # element has a unique mixed-radix key.
        base: list[int] | None = []
        keys = np.zeros(self.order, dtype=np.int64)
        moved = [b for b in range(self.degree) if (self.perms[:, b] != b).any()]
        while len(np.unique(keys)) < self.order:
            if self.degree ** (len(base) + 1) > 2**62:
                base = None
                break
            best = max(
                (b for b in moved if b not in base),
                key=lambda b: len(np.unique(keys * self.degree + self.perms[:, b])),
            )
            base.append(best)
            keys = keys * self.degree + self.perms[:, best]
        self._base = base
        if base is not None:
            self._key_order = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._key_order]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Index of each permutation row (rows must lie in the group)."""
        rows = np.atleast_2d(rows)
        if self._base is None:
            return np.array([self._index[tuple(r)] for r in rows.tolist()], dtype=np.int64)
        keys = np.zeros(rows.shape[0], dtype=np.int64)
        for b in self._base:
            keys = keys * self.degree + rows[:, b]
        return self._key_order[np.searchsorted(self._sorted_keys, keys)]

    def index_of(self, perm) -> int:
        return self._index[tuple(int(v) for v in perm)]

    @cached_property
    def table(self) -> np.ndarray | None:
        if self.order > LIMITS["table"]:
            return None
        t = np.empty((self.order, self.order), dtype=np.int64)
        for i in range(self.order):
            t[i] = self.lookup(self.perms[:, self.perms[i]])
        return t

    def mul(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        if self.table is not None:
            return self.table[x, y]
        px = self.perms[x.ravel()]
        py = self.perms[y.ravel()]
        return self.lookup(np.take_along_axis(py, px, axis=1)).reshape(x.shape)

    def product(self, i, j):
        if self.table is not None:
            return int(self.table[i, j])
        return self._index[tuple(self.perms[j][self.perms[i]].tolist())]
