"""Verification suites over parameter ranges and the conjecture runner.

A suite expands into case groups, each a picklable ``(label, fn, args)``;
``fn(*args)`` returns a list of ``(ok, detail)`` per case. Groups may run in
worker processes; results are collected in submission order.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Any, Callable

from ..arith import check_order_lower_bound, factorize
from ..formulas import (
    average_period_cyclic,
    check_extremal_family,
    check_majorization,
    check_nilpotent_bound,
    check_product_bound,
    check_subgroup_sum,
    n_cyclic,
    n_dihedral,
    n_from_spectrum,
    n_sl2,
)
from ..graph import average_period, build, certificate, decompose, tails_uniform
from ..groups import GroupSpec, load_catalog, realize
from ..spectrum import (
    OrderSpectrum,
    spectrum_bruteforce,
    spectrum_cyclic,
    spectrum_dihedral,
    spectrum_heisenberg,
    spectrum_product,
    spectrum_sl2,
)

SL2_QS = (3, 5, 7, 9, 11, 13)
GRAPH_COUNT_MAX = 4096

Case = tuple[bool, str]


@dataclass
class CaseGroup:
    label: str
    total: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any]
    groups: list[CaseGroup] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def counterexamples(self) -> list[str]:
        return [f for g in self.groups for f in g.failures]

    @property
    def cases(self) -> int:
        return sum(g.total for g in self.groups)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list[str]:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        out = [f"# suite {self.suite} {params}".rstrip()]
        for g in self.groups:
            status = "PASS" if g.passed else "FAIL"
            out.append(f"{status} {self.suite} {g.label}: {g.total - len(g.failures)}/{g.total}")
            out.extend(f"  counterexample: {c}" for c in g.failures)
        return out


def render(reports: list[VerificationReport], timing: bool = False) -> str:
    lines = []
    for r in reports:
        lines.extend(r.lines())
        if timing:
            lines.append(f"# wall_time {r.wall_time:.3f}s")
    failures = sum(len(r.counterexamples) for r in reports)
    lines.append(f"suites={len(reports)} failures={failures}")
    return "\n".join(lines) + "\n"


def _run(
    suite: str,
    params: dict[str, Any],
    groups: list[tuple[str, Callable[..., list[Case]], tuple]],
    jobs: int,
) -> VerificationReport:
    start = time.perf_counter()
    labels = [g[0] for g in groups]
    if jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(fn, *args) for _, fn, args in groups]
            results = [f.result() for f in futures]
    else:
        results = [fn(*args) for _, fn, args in groups]
    report = VerificationReport(suite, params)
    for label, cases in zip(labels, results):
        report.groups.append(
            CaseGroup(label, len(cases), [detail for ok, detail in cases if not ok])
        )
    report.wall_time = time.perf_counter() - start
    return report


def _graph_count(G, a: int) -> int:
    return decompose(build(G, a)).count


# -- case functions (module level so they pickle) ---------------------------


def _dihedral_cases(n: int, a_values: tuple[int, ...]) -> list[Case]:
    G = realize(GroupSpec.dihedral(n))
    out = []
    for a in a_values:
        brute = _graph_count(G, a)
        formula = n_dihedral(n, a).value
        cyc = n_cyclic(n, a).value
        branch = cyc if a % 2 == 0 else n + cyc
        out.append((brute == formula == branch, f"D_{n} a={a}: brute={brute} formula={formula}"))
    return out


def _sl2_cases(q: int, a_values: tuple[int, ...]) -> list[Case]:
    G = realize(GroupSpec.sl2(q))
    spec_ok = spectrum_bruteforce(G) == spectrum_sl2(q)
    out = [(spec_ok, f"SL2({q}) spectrum closed form vs enumeration")]
    for a in a_values:
        brute = _graph_count(G, a)
        formula = n_sl2(q, a).value
        out.append((brute == formula, f"SL2({q}) a={a}: brute={brute} formula={formula}"))
    return out


def _product_cases(pairs: tuple[tuple[int, int], ...], a: int) -> list[Case]:
    out = []
    for m, k in pairs:
        r = check_product_bound(spectrum_cyclic(m), spectrum_cyclic(k), a)
        out.append((r.verdict, f"C_{m} x C_{k} a={a}: {r.lhs} >= {r.rhs}"))
    return out


def _nilpotent_cases(name: str, s: OrderSpectrum, a_values: tuple[int, ...]) -> list[Case]:
    out = []
    for a in a_values:
        r = check_nilpotent_bound(s, a)
        out.append((r.verdict, f"{name} a={a}: N={r.lhs} >= N(C_{s.order})={r.rhs}"))
    return out


def _majorization_cases(name: str, s: OrderSpectrum) -> list[Case]:
    r = check_majorization(s)
    return [(r.verdict, f"{name}: B(m) table {r.notes['thresholds']}")]


def _extremal_cases(a: int, ks: tuple[int, ...]) -> list[Case]:
    out = []
    for k in ks:
        r = check_extremal_family(a, k)
        out.append((r.verdict, f"a={a} k={k}: N={r.lhs} >= {r.rhs}, ord={r.notes['order']}"))
    return out


def _period_cases(a: int, n_max: int) -> list[Case]:
    out = []
    for n in range(1, n_max + 1):
        d = decompose(build(realize(GroupSpec.cyclic(n)), a))
        g, f = average_period(d), average_period_cyclic(n, a)
        out.append((g == f, f"C_{n} a={a}: graph={g} formula={f}"))
    return out


def _tails_cases(a: int, n_max: int) -> list[Case]:
    out = []
    for n in range(1, n_max + 1):
        d = decompose(build(realize(GroupSpec.cyclic(n)), a))
        out.append((tails_uniform(d), f"C_{n} a={a}: tails not uniform"))
    return out


def _certificate_cases(a_values: tuple[int, ...]) -> list[Case]:
    abelian = realize(GroupSpec.product(*[GroupSpec.cyclic(3)] * 3))
    heis = realize(GroupSpec.heisenberg(3))
    out = []
    for a in a_values:
        same = certificate(build(abelian, a)) == certificate(build(heis, a))
        out.append((same, f"a={a}: G(a, C3^3) and G(a, Heisenberg(3)) certificates differ"))
    return out


def _order_bound_cases(a: int, n_max: int) -> list[Case]:
    out = []
    for n in range(1, n_max + 1):
        if math.gcd(a, n) == 1:
            r = check_order_lower_bound(a, n)
            out.append((r.verdict, f"a={a} n={n}: {r.lhs} >= {r.rhs}"))
    return out


def _subgroup_cases(n: int, a_values: tuple[int, ...]) -> list[Case]:
    # Rotations plus the n reflection subgroups {e, s} meet pairwise in e.
    G = realize(GroupSpec.dihedral(n))
    subs = [list(range(n))] + [[0, n + k] for k in range(n)]
    out = []
    for a in a_values:
        r = check_subgroup_sum(G, subs, a)
        out.append((r.verdict, f"D_{n} a={a}: {r.lhs} >= {r.rhs}"))
    return out


# -- p-group material --------------------------------------------------------


# Products of the units 1, i, j, k as (sign, unit index).
_QUATERNION = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]


def quaternion_spec() -> GroupSpec:
    """Q_8 acting on itself by right multiplication.

    Point ``2*u + s`` is the unit u (0..3 for 1, i, j, k) with sign (-1)**s.
    """

    def right_mult(g):
        img = []
        for point in range(8):
            u, neg = divmod(point, 2)
            sign, v = _QUATERNION[u][g]
            img.append(2 * v + (neg ^ (sign < 0)))
        return img

    return GroupSpec.permutation(8, [right_mult(1), right_mult(2)])


def builtin_p_groups(max_order: int = 729) -> list[tuple[str, OrderSpectrum]]:
    """Spectra of the built-in groups of prime-power order <= max_order."""
    out: list[tuple[str, OrderSpectrum]] = []
    for p in (2, 3, 5, 7):
        q = p
        while q <= max_order:
            out.append((f"C{q}", spectrum_cyclic(q)))
            q *= p
    n = 4
    while 2 * n <= max_order:
        out.append((f"D{n}", spectrum_dihedral(n)))
        n *= 2
    for p in (3, 5):
        if p**3 <= max_order:
            out.append((f"Heis{p}", spectrum_heisenberg(p)))
    out.append(("Q8", spectrum_bruteforce(realize(quaternion_spec()))))
    return out


def nilpotent_products(max_order: int = 729) -> list[tuple[str, OrderSpectrum]]:
    """Base p-groups and every direct product of them (repeats and mixed
    primes allowed) with order <= max_order, each multiset once."""
    base = builtin_p_groups(max_order)
    out: list[tuple[str, OrderSpectrum]] = []

    def extend(start: int, names: list[str], s: OrderSpectrum) -> None:
        for i in range(start, len(base)):
            name, t = base[i]
            if s.order * t.order > max_order:
                continue
            prod = spectrum_product(s, t)
            out.append(("x".join(names + [name]), prod))
            extend(i, names + [name], prod)

    extend(0, [], OrderSpectrum(1, {1: 1}))
    return out


def _is_prime_power(n: int) -> bool:
    return len(factorize(n)) == 1


# -- suites -------------------------------------------------------------------


def verify_suite(name: str, ranges: dict[str, Any] | None = None, jobs: int = 1) -> VerificationReport:
    """Run one named suite. ``ranges`` overrides the defaults shown below."""
    r = dict(ranges or {})
    if name == "dihedral":
        n_max, a_max = r.get("n_max", 300), r.get("a_max", 12)
        a_vals = tuple(range(2, a_max + 1))
        groups = [(f"n={n}", _dihedral_cases, (n, a_vals)) for n in range(3, n_max + 1)]
        params = {"n_max": n_max, "a_max": a_max}
    elif name == "sl2":
        qs = tuple(r.get("qs", SL2_QS))
        a_max = r.get("a_max", 10)
        a_vals = tuple(range(2, a_max + 1))
        groups = [(f"q={q}", _sl2_cases, (q, a_vals)) for q in qs]
        params = {"qs": ",".join(map(str, qs)), "a_max": a_max}
    elif name == "product":
        count, m_max = r.get("pairs", 100), r.get("m_max", 300)
        a_vals = tuple(r.get("a_values", (2, 3, 5)))
        rng = random.Random(r.get("seed", 20240601))
        pairs = tuple((rng.randint(1, m_max), rng.randint(1, m_max)) for _ in range(count))
        groups = [(f"a={a}", _product_cases, (pairs, a)) for a in a_vals]
        params = {"pairs": count, "m_max": m_max, "a": ",".join(map(str, a_vals))}
    elif name == "nilpotent":
        max_order, a_max = r.get("max_order", 729), r.get("a_max", 20)
        a_vals = tuple(range(2, a_max + 1))
        groups = [
            (label, _nilpotent_cases, (label, s, a_vals))
            for label, s in nilpotent_products(max_order)
        ]
        params = {"max_order": max_order, "a_max": a_max}
    elif name == "majorization":
        max_order = r.get("max_order", 729)
        groups = [
            (label, _majorization_cases, (label, s))
            for label, s in nilpotent_products(max_order)
            if _is_prime_power(s.order)
        ]
        params = {"max_order": max_order}
    elif name == "extremal":
        a_vals = tuple(r.get("a_values", (2, 3)))
        ks = tuple(range(1, r.get("k_max", 20) + 1))
        groups = [(f"a={a}", _extremal_cases, (a, ks)) for a in a_vals]
        params = {"a": ",".join(map(str, a_vals)), "k_max": len(ks)}
    elif name in ("period", "tails"):
        n_max, a_max = r.get("n_max", 300), r.get("a_max", 12)
        fn = _period_cases if name == "period" else _tails_cases
        groups = [(f"a={a}", fn, (a, n_max)) for a in range(2, a_max + 1)]
        params = {"n_max": n_max, "a_max": a_max}
    elif name == "certificate":
        a_lo, a_hi = r.get("a_min", 2), r.get("a_max", 20)
        groups = [("C3^3 vs Heisenberg(3)", _certificate_cases, (tuple(range(a_lo, a_hi + 1)),))]
        params = {"a_min": a_lo, "a_max": a_hi}
    elif name == "order_lower_bound":
        n_max, a_max = r.get("n_max", 1000), r.get("a_max", 12)
        groups = [(f"a={a}", _order_bound_cases, (a, n_max)) for a in range(2, a_max + 1)]
        params = {"n_max": n_max, "a_max": a_max}
    elif name == "subgroup_sum":
        n_max, a_max = r.get("n_max", 60), r.get("a_max", 12)
        a_vals = tuple(range(2, a_max + 1))
        groups = [(f"n={n}", _subgroup_cases, (n, a_vals)) for n in range(3, n_max + 1)]
        params = {"n_max": n_max, "a_max": a_max}
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _run(name, params, groups, jobs)


SUITES = (
    "dihedral",
    "sl2",
    "product",
    "nilpotent",
    "majorization",
    "extremal",
    "period",
    "tails",
    "certificate",
    "order_lower_bound",
    "subgroup_sum",
)


# -- conjecture -----------------------------------------------------------------


def _conjecture_cases(name: str, spec: GroupSpec, a_max: int) -> list[Case]:
    G = realize(spec, name)
    s = spectrum_bruteforce(G)
    out = []
    for a in range(2, a_max + 1):
        if G.order <= GRAPH_COUNT_MAX:
            count = _graph_count(G, a)
        else:
            count = n_from_spectrum(s, a).value
        cyc = n_cyclic(G.order, a).value
        out.append(
            (count >= cyc, f"{name} (order {G.order}) a={a}: N={count} < N(C_{G.order})={cyc}")
        )
    return out


def verify_conjecture(
    catalog: IO[bytes] | IO[str] | bytes | str, a_max: int = 20, jobs: int = 1
) -> VerificationReport:
    """Check N(a, G) >= N(a, C_|G|) for every catalog group and 2 <= a <= a_max."""
    if a_max < 2:
        raise ValueError(f"a_max must be >= 2, got {a_max}")
    entries = load_catalog(catalog)
    groups = [(name, _conjecture_cases, (name, spec, a_max)) for name, spec in entries]
    return _run("conjecture", {"groups": len(entries), "a_max": a_max}, groups, jobs)
