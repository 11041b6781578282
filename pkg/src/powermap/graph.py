"""The functional graph of x -> x**a on an explicit group.

Everything works on the directed successor array; the undirected multigraph
has the same components (each has exactly one cycle).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import IO

import numpy as np

from . import kernels
from .groups import LIMITS, BudgetExceeded, FiniteGroup, power_all


@dataclass(frozen=True, eq=False)
class PowerGraph:
    group: FiniteGroup
    a: int
    succ: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.succ)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Components of a functional graph.

    ``cycles[c]`` lists the cycle of component ``c`` in successor order;
    ``dist[x]`` is 0 exactly for purely periodic nodes.
    """

    graph: PowerGraph
    comp: np.ndarray = field(repr=False)
    dist: np.ndarray = field(repr=False)
    cycle_lengths: np.ndarray
    cycles: list[list[int]] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.cycles)

    @cached_property
    def component_sizes(self) -> np.ndarray:
        return np.bincount(self.comp, minlength=self.count)

    @property
    def periodic(self) -> np.ndarray:
        return np.flatnonzero(self.dist == 0)

    def tails(self, c: int) -> np.ndarray:
        """Non-periodic nodes of component ``c``."""
        return np.flatnonzero((self.comp == c) & (self.dist > 0))


def build(G: FiniteGroup, a: int) -> PowerGraph:
    if a < 1:
        raise ValueError(f"exponent must be >= 1, got {a}")
    if G.order > LIMITS["elements"]:
        raise BudgetExceeded(f"{G.name} has more than {LIMITS['elements']} nodes")
    succ = power_all(G, a)
    succ.flags.writeable = False
    return PowerGraph(G, a, succ)


def decompose(pg: PowerGraph) -> Decomposition:
    comp, dist, cyc_len, cyc_head = kernels.decompose_succ(pg.succ)
    succ = pg.succ
    cycles = []
    for head, length in zip(cyc_head.tolist(), cyc_len.tolist()):
        cyc = [head]
        for _ in range(length - 1):
            cyc.append(int(succ[cyc[-1]]))
        cycles.append(cyc)
    return Decomposition(pg, comp, dist, cyc_len, cycles)


def average_period(d: Decomposition) -> Fraction:
    """Mean over all nodes of the length of the cycle they fall into."""
    total = int(d.cycle_lengths[d.comp].sum())
    return Fraction(total, len(d.comp))


class _TreeCoder:
    """Canonical parenthesis codes of rooted in-trees, interned to ints.

    Codes are shared across every tree hashed by one coder, so two ids are
    equal iff the trees are isomorphic.
    """

    def __init__(self):
        self._ids: dict[tuple[int, ...], int] = {}
        self.strings: list[str] = []

    def intern(self, children: list[int]) -> int:
        key = tuple(sorted(children, key=lambda c: self.strings[c]))
        cid = self._ids.get(key)
        if cid is None:
            cid = len(self.strings)
            self._ids[key] = cid
            self.strings.append("(" + "".join(self.strings[c] for c in key) + ")")
        return cid


def _periodic_tree_ids(d: Decomposition, coder: _TreeCoder) -> dict[int, int]:
    """Tree code id of the tail hanging off each purely periodic node."""
    succ = d.graph.succ
    dist = d.dist
    children: dict[int, list[int]] = {}
    # Process nodes deepest first so children are coded before parents.
    order = np.argsort(-dist, kind="stable")
    code = {}
    for x in order.tolist():
        cid = coder.intern(children.pop(x, []))
        code[x] = cid
        if dist[x] > 0:
            children.setdefault(int(succ[x]), []).append(cid)
    return {x: code[x] for x in d.periodic.tolist()}


def _least_rotation(seq: list[int]) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(seq)
    s = seq + seq
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def _component_codes(pg: PowerGraph, d: Decomposition | None = None) -> list[str]:
    d = d or decompose(pg)
    coder = _TreeCoder()
    tree = _periodic_tree_ids(d, coder)
    # Rank tree codes by their strings so rotations compare canonically.
    used = sorted(set(tree.values()), key=lambda c: coder.strings[c])
    rank = {c: i for i, c in enumerate(used)}
    codes = []
    for cyc in d.cycles:
        seq = [rank[tree[x]] for x in cyc]
        k = _least_rotation(seq)
        rotated = seq[k:] + seq[:k]
        codes.append(f"{len(cyc)}:" + "".join(coder.strings[used[r]] for r in rotated))
    return codes


def certificate(pg: PowerGraph, d: Decomposition | None = None) -> bytes:
    """Canonical form of the functional graph up to relabelling of nodes.

    Each component is coded by its cycle length followed by the least
    rotation of the tree codes met going around the cycle; the certificate
    is the sorted list of component codes.
    """
    return "\n".join(sorted(_component_codes(pg, d))).encode("ascii")


def tails_uniform(d: Decomposition) -> bool:
    """True iff every purely periodic node carries an isomorphic tail tree."""
    tree = _periodic_tree_ids(d, _TreeCoder())
    return len(set(tree.values())) <= 1


def export_dot(
    pg: PowerGraph, d: Decomposition | None, sink: IO[str], undirected: bool = False
) -> None:
    """Write the graph in DOT, one edge ``i -> succ[i]`` per node.

    Purely periodic nodes are drawn as double circles when ``d`` is given.

    With ``undirected=True`` the multigraph form is written instead: one
    ``i -- succ[i]`` edge per node, so every 2-cycle shows a doubled edge.
    """
    kind, arrow = ("graph", "--") if undirected else ("digraph", "->")
    lines = [f'{kind} "G({pg.a}, {pg.group.name})" {{']
    periodic = set(d.periodic.tolist()) if d is not None else set()
    for x in range(pg.size):
        attr = " [shape=doublecircle]" if x in periodic else ""
        lines.append(f"  {x}{attr};")
    for x, y in enumerate(pg.succ.tolist()):
        lines.append(f"  {x} {arrow} {y};")
    lines.append("}")
    sink.write("\n".join(lines) + "\n")
