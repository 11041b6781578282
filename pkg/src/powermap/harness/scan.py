"""Sieve-driven scan of N(a, C_n) over 1 <= n <= x."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import IO

import numpy as np

from .. import kernels
from ..arith import SpfSieve

SCAN_MAX = 10**7


def render_decimal(q: Fraction, digits: int = 6) -> str:
    """Exact rational rounded half-even to a fixed number of decimals."""
    scaled = round(q * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def prime_power_orders(a: int, spf: np.ndarray) -> np.ndarray:
    """``out[p**e]`` = ord_{p**e}(a) for every prime power up to the sieve
    limit with p coprime to a; all other entries are 0."""
    limit = len(spf) - 1
    out = np.zeros(limit + 1, dtype=np.int64)
    primes = np.flatnonzero(spf[2:] == np.arange(2, limit + 1)) + 2
    spf_list = spf.tolist()
    for p in primes.tolist():
        if a % p == 0:
            continue
        # ord_p(a): strip prime factors of p - 1.
        t = p - 1
        m = t
        while m > 1:
            r = spf_list[m]
            while m % r == 0:
                m //= r
            while t % r == 0 and pow(a, t // r, p) == 1:
                t //= r
        out[p] = t
        pe = p * p
        while pe <= limit:
            if pow(a, t, pe) != 1:
                t *= p
            out[pe] = t
            pe *= p
    return out


def _chunk_worker(args):
    lo, hi, a, spf, ordpp = args
    return kernels.cyclic_counts(lo, hi, a, spf, ordpp)


def cyclic_counts_upto(x: int, a: int, jobs: int = 1, chunk: int = 1 << 16) -> np.ndarray:
    """Array whose entry n-1 is N(a, C_n), for n = 1..x.

    Chunks are contiguous and merged in order, so the result does not depend
    on ``jobs``.
    """
    if not 1 <= x <= SCAN_MAX:
        raise ValueError(f"scan limit must be in 1..{SCAN_MAX}, got {x}")
    if a < 1:
        raise ValueError(f"exponent a must be >= 1, got {a}")
    spf = SpfSieve(x).spf
    ordpp = prime_power_orders(a, spf)
    bounds = [(lo, min(lo + chunk, x + 1)) for lo in range(1, x + 1, chunk)]
    tasks = [(lo, hi, a, spf, ordpp) for lo, hi in bounds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_chunk_worker, tasks))
    else:
        parts = [_chunk_worker(t) for t in tasks]
    return np.concatenate(parts)


def write_csv(counts: np.ndarray, sink: IO[str]) -> None:
    sink.write("n,N,ratio\n")
    for n, c in enumerate(counts.tolist(), start=1):
        sink.write(f"{n},{c},{render_decimal(Fraction(c, n))}\n")


def scan_cyclic_average(
    x: int, a: int, csv: IO[str] | None = None, jobs: int = 1
) -> Fraction:
    """Exact mean of N(a, C_n) over 1 <= n <= x; optionally writes CSV rows."""
    counts = cyclic_counts_upto(x, a, jobs=jobs)
    if csv is not None:
        write_csv(counts, csv)
    return Fraction(sum(counts.tolist()), x)
