"""Pure-Python reference versions of the hot loops in ``_ckernels.pyx``."""

from __future__ import annotations

from math import gcd

import numpy as np


def decompose_succ(succ):
    """Split a functional graph into components.

    Returns ``(comp, dist, cycle_len, cycle_head)``: component id and
    distance-to-cycle per node, and per component the cycle length and one
    node on the cycle. Component ids follow the order in which cycles are
    first met when scanning nodes 0, 1, 2, ...
    """
    succ = np.asarray(succ, dtype=np.int64).tolist()
    n = len(succ)
    state = [0] * n  # 0 unseen, 1 on the current walk, 2 finished
    pos = [0] * n
    comp = [-1] * n
    dist = [0] * n
    cycle_len: list[int] = []
    cycle_head: list[int] = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = succ[x]
        if state[x] == 1:
            cid = len(cycle_len)
            first = pos[x]
            for y in path[first:]:
                comp[y] = cid
                state[y] = 2
            cycle_len.append(len(path) - first)
            cycle_head.append(x)
            del path[first:]
        for y in reversed(path):
            t = succ[y]
            comp[y] = comp[t]
            dist[y] = dist[t] + 1
            state[y] = 2
    return (
        np.array(comp, dtype=np.int64),
        np.array(dist, dtype=np.int64),
        np.array(cycle_len, dtype=np.int64),
        np.array(cycle_head, dtype=np.int64),
    )


def cyclic_counts(lo, hi, a, spf, ordpp):
    """N(a, C_n) for every n in [lo, hi).

    ``spf[m]`` is the smallest prime factor of m and ``ordpp[p**e]`` the
    order of a modulo p**e (0 where p divides a). Each count is the sum of
    phi(d) / ord_d(a) over divisors d of the a-coprime part of n; every term
    is an integer because ord_d(a) divides lambda(d) which divides phi(d).
    """
    spf = np.asarray(spf).tolist() if not isinstance(spf, list) else spf
    ordpp = np.asarray(ordpp).tolist() if not isinstance(ordpp, list) else ordpp
    out = np.zeros(hi - lo, dtype=np.int64)
    for n in range(lo, hi):
        terms = [(1, 1)]  # (phi(d), ord_d(a))
        m = n
        while m > 1:
            p = spf[m]
            pe = 1
            while m % p == 0:
                m //= p
                pe *= p
            if ordpp[p] == 0:
                continue
            new = []
            q = p
            phi_q = p - 1
            while q <= pe:
                oq = ordpp[q]
                for ph, od in terms:
                    new.append((ph * phi_q, od // gcd(od, oq) * oq))
                q *= p
                phi_q *= p
            terms.extend(new)
        out[n - lo] = sum(ph // od for ph, od in terms)
    return out
