"""Cycle counts N(a, G) from order spectra and family closed forms, plus
exact checks of the inequalities relating them.

N(a, G) is the sum of w(d) / ord_d(a) over orders d coprime to a: elements
of such an order are purely periodic and sit on cycles of length ord_d(a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .arith import (
    carmichael_lambda,
    coprime_part,
    divisors,
    euler_phi,
    factorize,
    mult_order,
)
from .groups import FiniteGroup
from .report import CheckReport
from .spectrum import (
    OrderSpectrum,
    b_count,
    spectrum_cyclic,
    spectrum_product,
    spectrum_symmetric,
)


class NonIntegerCount(ArithmeticError):
    """The cycle-count sum came out fractional, which signals a bug."""


@dataclass(frozen=True)
class CycleCount:
    value: int
    formula: str

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"cycle count must be >= 1, got {self.value}")

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other):
        if isinstance(other, CycleCount):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)


def _check_a(a: int) -> None:
    if a < 1:
        raise ValueError(f"exponent a must be >= 1, got {a}")


def odd_indicator(a: int) -> int:
    """1 if a is odd, else 0."""
    return a & 1


def n_from_spectrum(s: OrderSpectrum, a: int) -> CycleCount:
    _check_a(a)
    rho = coprime_part(s.order, a)
    total = Fraction(0)
    for d, w in s.items():
        if rho % d == 0:
            total += Fraction(w, mult_order(a, d))
    if total.denominator != 1:
        raise NonIntegerCount(f"sum of w(d)/ord_d({a}) is {total} for order {s.order}")
    return CycleCount(int(total), "spectrum")


def _order_mod_prime_powers(a: int, p: int, e: int) -> list[int]:
    """[ord_{p}(a), ord_{p^2}(a), ..., ord_{p^e}(a)]."""
    out = []
    t = 1
    for j in range(1, e + 1):
        m = p**j
        t = mult_order(a, m) if j == 1 else (t if pow(a, t, m) == 1 else t * p)
        out.append(t)
    return out


def n_cyclic(n: int, a: int) -> CycleCount:
    """N(a, C_n) without building the group.

    ord_d(a) is the lcm of the orders modulo the prime powers of d, and each
    term phi(d)/ord_d(a) is an integer since ord_d(a) | lambda(d) | phi(d).
    """
    _check_a(a)
    rho = coprime_part(n, a)
    terms = [(1, 1)]
    for p, e in factorize(rho):
        orders = _order_mod_prime_powers(a, p, e)
        new = []
        for j, o in enumerate(orders, start=1):
            ph = (p - 1) * p ** (j - 1)
            new.extend((f * ph, math.lcm(t, o)) for f, t in terms)
        terms += new
    return CycleCount(sum(f // t for f, t in terms), "cyclic")


def n_dihedral(n: int, a: int) -> CycleCount:
    """N(a, D_n): reflections join the identity's component for even a and
    are isolated fixed points for odd a."""
    _check_a(a)
    if n < 3:
        raise ValueError(f"dihedral formula needs n >= 3, got {n}")
    base = n_cyclic(n, a).value
    return CycleCount(base if a % 2 == 0 else n + base, "dihedral")


def n_sl2(q: int, a: int) -> CycleCount:
    """N(a, SL_2(F_q)) for odd q from the conjugacy-class census."""
    _check_a(a)
    f = factorize(q)
    if q < 3 or q % 2 == 0 or len(f) != 1:
        raise ValueError(f"n_sl2 needs an odd prime power q >= 3, got {q}")
    p = f[0][0]
    odd = odd_indicator(a)
    q2 = q * q
    total = (
        Fraction(q2 - q, 2) * n_cyclic(q + 1, a).value
        + Fraction(q2 + q, 2) * n_cyclic(q - 1, a).value
        - (q2 - 1) * (1 + odd)
    )
    if math.gcd(a, q) == 1:
        total += Fraction(q2 - 1, mult_order(a, p))
        if odd:
            total += Fraction(q2 - 1, mult_order(a, 2 * p))
    if total.denominator != 1:
        raise NonIntegerCount(f"SL2 formula gave {total} for q={q}, a={a}")
    return CycleCount(int(total), "sl2")


def n_sl2_prime_remark(p: int, a: int) -> CycleCount:
    """The simplified prime-field expression

        (p^2-p)/2 N(a,C_{p+1}) + (p^2+p)/2 N(a,C_{p-1}) + (p+1) N(a,C_p)
        - (p^2-p)(1 + [a odd]).

    Kept for comparison only: it disagrees with :func:`n_sl2` and with
    enumeration (e.g. p=3, a=2 gives 11 against the true 5).
    """
    _check_a(a)
    odd = odd_indicator(a)
    p2 = p * p
    total = (
        Fraction(p2 - p, 2) * n_cyclic(p + 1, a).value
        + Fraction(p2 + p, 2) * n_cyclic(p - 1, a).value
        + (p + 1) * n_cyclic(p, a).value
        - (p2 - p) * (1 + odd)
    )
    return CycleCount(int(total), "sl2-prime-remark")


def n_symmetric(n: int, a: int) -> CycleCount:
    return CycleCount(n_from_spectrum(spectrum_symmetric(n), a).value, "symmetric")


def average_period_cyclic(n: int, a: int) -> Fraction:
    """Mean eventual cycle length over C_n: (1/rho) sum phi(d) ord_d(a)."""
    _check_a(a)
    rho = coprime_part(n, a)
    total = sum(euler_phi(d) * mult_order(a, d) for d in divisors(factorize(rho)))
    return Fraction(total, rho)


# -- checks -----------------------------------------------------------------


def _component_ids(G: FiniteGroup, a: int) -> np.ndarray:
    from .graph import build, decompose

    return decompose(build(G, a)).comp


def _is_subgroup(G: FiniteGroup, elems: np.ndarray) -> bool:
    members = np.zeros(G.order, dtype=bool)
    members[elems] = True
    if not members[G.identity]:
        return False
    x, y = np.meshgrid(elems, elems, indexing="ij")
    return bool(members[G.mul(x.ravel(), y.ravel())].all())


def check_subgroup_sum(
    G: FiniteGroup, subgroups: Iterable[Iterable[int]], a: int
) -> CheckReport:
    """N(a, G) >= sum N(a, H_i) - k + 1 for subgroups meeting only in e.

    Each H_i is closed under powering, so its own graph is the induced
    subgraph and N(a, H_i) is the number of distinct components it meets.
    """
    _check_a(a)
    subs = [np.unique(np.asarray(list(h), dtype=np.int64)) for h in subgroups]
    if not subs:
        raise ValueError("need at least one subgroup")
    for h in subs:
        if not _is_subgroup(G, h):
            raise ValueError(f"{h.tolist()[:8]}... is not a subgroup of {G.name}")
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            common = np.intersect1d(subs[i], subs[j])
            if common.tolist() != [G.identity]:
                raise ValueError(f"subgroups {i} and {j} meet in more than the identity")
    comp = _component_ids(G, a)
    n_g = len(np.unique(comp))
    n_h = [len(np.unique(comp[h])) for h in subs]
    rhs = sum(n_h) - len(subs) + 1
    return CheckReport(
        "subgroup_sum",
        {"group": G.name, "a": a, "k": len(subs)},
        n_g,
        rhs,
        n_g >= rhs,
        {"subgroup_counts": n_h},
    )


def check_product_bound(s1: OrderSpectrum, s2: OrderSpectrum, a: int) -> CheckReport:
    """N(a, G x H) >= N(a, G) N(a, H)."""
    lhs = n_from_spectrum(spectrum_product(s1, s2), a).value
    rhs = n_from_spectrum(s1, a).value * n_from_spectrum(s2, a).value
    return CheckReport(
        "product_bound", {"orders": (s1.order, s2.order), "a": a}, lhs, rhs, lhs >= rhs
    )


def check_nilpotent_bound(s: OrderSpectrum, a: int) -> CheckReport:
    """N(a, G) >= N(a, C_|G|); proved for nilpotent G, conjectured for all."""
    lhs = n_from_spectrum(s, a).value
    rhs = n_cyclic(s.order, a).value
    return CheckReport(
        "nilpotent_bound", {"order": s.order, "a": a}, lhs, rhs, lhs >= rhs
    )


def check_majorization(s: OrderSpectrum) -> CheckReport:
    """B_G(m) <= B_C(m) at every m dividing |G|, for G of prime-power order.

    The report's sides are taken at the threshold with the smallest slack.
    """
    f = factorize(s.order)
    if len(f) > 1:
        raise ValueError(f"order {s.order} is not a prime power")
    cyc = spectrum_cyclic(s.order)
    worst = None
    for m in divisors(f):
        bg, bc = b_count(s, m), b_count(cyc, m)
        if worst is None or bc - bg < worst[2] - worst[1]:
            worst = (m, bg, bc)
    m, bg, bc = worst
    table = {t: (b_count(s, t), b_count(cyc, t)) for t in divisors(f)}
    ok = all(g <= c for g, c in table.values())
    return CheckReport(
        "majorization", {"order": s.order, "m": m}, bg, bc, ok, {"thresholds": table}
    )


def check_extremal_family(a: int, k: int) -> CheckReport:
    """For n = a^k - 1: ord_n(a) = k and N(a, C_n) >= phi(n)/k."""
    if a < 2 or k < 1:
        raise ValueError("need a >= 2 and k >= 1")
    n = a**k - 1
    order = mult_order(a, n)
    lhs = n_cyclic(n, a).value
    rhs = Fraction(euler_phi(n), k)
    return CheckReport(
        "extremal_family",
        {"a": a, "k": k, "n": n},
        lhs,
        rhs,
        lhs >= rhs and order == k,
        {"order": order},
    )


def lambda_ratio_divides(d: int, n: int) -> bool:
    """phi(d)/lambda(d) divides phi(n)/lambda(n) whenever d | n."""
    r_d = euler_phi(d) // carmichael_lambda(d)
    r_n = euler_phi(n) // carmichael_lambda(n)
    return r_n % r_d == 0
