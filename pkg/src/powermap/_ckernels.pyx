# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


def decompose_succ(succ_in):
    cdef const i64[::1] succ = np.ascontiguousarray(succ_in, dtype=np.int64)
    cdef Py_ssize_t n = succ.shape[0]
    cdef cnp.ndarray[cnp.int8_t, ndim=1] state_arr = np.zeros(n, dtype=np.int8)
    cdef cnp.int8_t[::1] state = state_arr
    comp_arr = np.full(n, -1, dtype=np.int64)
    dist_arr = np.zeros(n, dtype=np.int64)
    pos_arr = np.zeros(n, dtype=np.int64)
    path_arr = np.zeros(n, dtype=np.int64)
    cyc_len_arr = np.zeros(n, dtype=np.int64)
    cyc_head_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] comp = comp_arr
    cdef i64[::1] dist = dist_arr
    cdef i64[::1] pos = pos_arr
    cdef i64[::1] path = path_arr
    cdef i64[::1] cyc_len = cyc_len_arr
    cdef i64[::1] cyc_head = cyc_head_arr
    cdef Py_ssize_t start, plen, first, k
    cdef i64 x, y, t, cid, ncomp = 0
    with nogil:
        for start in range(n):
            if state[start]:
                continue
            plen = 0
            x = start
            while state[x] == 0:
                state[x] = 1
                pos[x] = plen
                path[plen] = x
                plen += 1
                x = succ[x]
            if state[x] == 1:
                cid = ncomp
                ncomp += 1
                first = pos[x]
                for k in range(first, plen):
                    y = path[k]
                    comp[y] = cid
                    state[y] = 2
                cyc_len[cid] = plen - first
                cyc_head[cid] = x
                plen = first
            for k in range(plen - 1, -1, -1):
                y = path[k]
                t = succ[y]
                comp[y] = comp[t]
                dist[y] = dist[t] + 1
                state[y] = 2
    return comp_arr, dist_arr, cyc_len_arr[:ncomp].copy(), cyc_head_arr[:ncomp].copy()


def cyclic_counts(i64 lo, i64 hi, i64 a, spf_in, ordpp_in):
    cdef const i64[::1] spf = np.ascontiguousarray(spf_in, dtype=np.int64)
    cdef const i64[::1] ordpp = np.ascontiguousarray(ordpp_in, dtype=np.int64)
    out_arr = np.zeros(hi - lo, dtype=np.int64)
    cdef i64[::1] out = out_arr
    # Divisor count of any n < 2**63 is far below this.
    cdef Py_ssize_t cap = 1 << 17
    cdef i64 *phi = <i64 *> malloc(cap * sizeof(i64))
    cdef i64 *ordv = <i64 *> malloc(cap * sizeof(i64))
    if phi == NULL or ordv == NULL:
        free(phi)
        free(ordv)
        raise MemoryError()
    cdef i64 n, m, p, pe, q, phi_q, oq, od, total
    cdef Py_ssize_t cnt, base, k
    try:
        with nogil:
            for n in range(lo, hi):
                phi[0] = 1
                ordv[0] = 1
                cnt = 1
                m = n
                while m > 1:
                    p = spf[m]
                    pe = 1
                    while m % p == 0:
                        m = m // p
                        pe = pe * p
                    if ordpp[p] == 0:
                        continue
                    base = cnt
                    q = p
                    phi_q = p - 1
                    while q <= pe:
                        oq = ordpp[q]
                        for k in range(base):
                            od = ordv[k]
                            phi[cnt] = phi[k] * phi_q
                            ordv[cnt] = od // _gcd(od, oq) * oq
                            cnt += 1
                        q = q * p
                        phi_q = phi_q * p
                total = 0
                for k in range(cnt):
                    total += phi[k] // ordv[k]
                out[n - lo] = total
    finally:
        free(phi)
        free(ordv)
    return out_arr
