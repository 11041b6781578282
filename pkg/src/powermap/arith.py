"""Exact integer arithmetic: factorization, totients, Carmichael lambda and
multiplicative orders.

Factorizations are plain lists of ``(prime, exponent)`` pairs sorted by prime.
Rationals are :class:`fractions.Fraction`, which is always reduced.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .report import CheckReport

Factorization = list[tuple[int, int]]

TRIAL_LIMIT = 10**6

# First 13 primes as Miller-Rabin bases: deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BOUND = 3317044064679887385961981


class NotCoprimeError(ValueError):
    """Raised when a multiplicative order is requested for a non-unit."""


def _check_positive(n: int, what: str = "n") -> None:
    if n < 1:
        raise ValueError(f"{what} must be a positive integer, got {n}")


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = np.ones(TRIAL_LIMIT, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(np.flatnonzero(sieve).tolist())


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases, deterministic below ``_MR_BOUND``.

    Larger inputs also get a strong Lucas test (together: Baillie-PSW, with
    no known counterexample).
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return n < _MR_BOUND or _strong_lucas(n)


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters, odd n > 2."""
    r = math.isqrt(n)
    if r * r == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    # Binary ladder for U_d, V_d, Q^d.
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` as sorted ``(p, e)`` pairs; ``[]`` for 1.

    Trial division by primes below 10**6, then Pollard-Brent on the cofactor.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factorize {n}: need n >= 1")
    return list(_factorize_cached(n))


@lru_cache(maxsize=65536)
def _factorize_cached(n: int) -> tuple[tuple[int, int], ...]:
    found: dict[int, int] = {}
    if n > TRIAL_LIMIT and is_prime(n):
        return ((n, 1),)
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
            if n > TRIAL_LIMIT and is_prime(n):
                break
    if n > 1:
        # Deterministic seed keeps factor discovery reproducible.
        _split(n, found, random.Random(n))
    return tuple(sorted(found.items()))


def factor_value(f: Factorization) -> int:
    return math.prod(p**e for p, e in f)


def divisors(f: Factorization) -> list[int]:
    """All divisors of the factored integer, ascending."""
    divs = [1]
    for p, e in f:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def _lambda_prime_power(p: int, e: int) -> int:
    if p == 2:
        return 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
    return p ** (e - 1) * (p - 1)


def carmichael_lambda(n: int) -> int:
    """Exponent of the unit group modulo ``n``."""
    _check_positive(n)
    return math.lcm(1, *(_lambda_prime_power(p, e) for p, e in factorize(n)))


def carmichael_lambda_factored(n: int) -> Factorization:
    """Factorization of ``carmichael_lambda(n)`` built from the pieces of ``n``."""
    _check_positive(n)
    exps: dict[int, int] = {}
    for p, e in factorize(n):
        if p == 2:
            parts = [] if e == 1 else [(2, 1)] if e == 2 else [(2, e - 2)]
        else:
            parts = factorize(p - 1) + ([(p, e - 1)] if e > 1 else [])
        for q, k in parts:
            exps[q] = max(exps.get(q, 0), k)
    return sorted(exps.items())


@lru_cache(maxsize=1 << 18)
def mult_order(a: int, n: int) -> int:
    """Least ``t >= 1`` with ``a**t == 1 (mod n)``.

    Starts from lambda(n) and strips prime factors from the exponent.
    """
    _check_positive(n)
    _check_positive(a, "a")
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise NotCoprimeError(f"{a} is not coprime to {n}")
    lam = carmichael_lambda_factored(n)
    t = factor_value(lam)
    for p, _ in lam:
        while t % p == 0 and pow(a, t // p, n) == 1:
            t //= p
    return t


def coprime_part(n: int, a: int) -> int:
    """Largest divisor of ``n`` coprime to ``a``."""
    _check_positive(n)
    _check_positive(a, "a")
    g = math.gcd(n, a)
    while g > 1:
        n //= g
        g = math.gcd(n, g)
    return n


def check_order_lower_bound(a: int, n: int) -> CheckReport:
    """ord_n(a) >= (lambda(n)/n) * prod_{p | n} ord_p(a).

    This is a theorem; a failing verdict means a bug somewhere upstream.
    """
    lhs = mult_order(a, n)
    rhs = Fraction(carmichael_lambda(n), n)
    for p, _ in factorize(n):
        rhs *= mult_order(a, p)
    return CheckReport(
        "order_lower_bound", {"a": a, "n": n}, Fraction(lhs), rhs, lhs >= rhs
    )


class SpfSieve:
    """Smallest-prime-factor table for fast factorization of all n <= limit."""

    def __init__(self, limit: int):
        _check_positive(limit, "limit")
        self.limit = limit
        spf = np.arange(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == p:
                tail = spf[p * p :: p]
                tail[tail == np.arange(p * p, limit + 1, p)] = p
        spf.flags.writeable = False
        self.spf = spf

    def factorize(self, n: int) -> Factorization:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")
        out: Factorization = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
