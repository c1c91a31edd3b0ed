# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend.

Mirrors ``_kernels_py`` exactly: for identical inputs both backends return
identical values.  Keep the two files in sync.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport qsort

cnp.import_array()


def backend_name():
    return "cython"


cdef inline int _key_cmp(Py_ssize_t u, Py_ssize_t v,
                         const cnp.int32_t[::1] colours,
                         const cnp.int32_t[::1] sorted_nc,
                         const cnp.int64_t[::1] indptr) noexcept nogil:
    # Lexicographic order on (colour, sorted neighbour colours); a key that
    # is a strict prefix of another sorts first.
    cdef Py_ssize_t au, bu, av, bv, du, dv
    if colours[u] != colours[v]:
        return -1 if colours[u] < colours[v] else 1
    au = indptr[u]
    bu = indptr[u + 1]
    av = indptr[v]
    bv = indptr[v + 1]
    while au < bu and av < bv:
        if sorted_nc[au] != sorted_nc[av]:
            return -1 if sorted_nc[au] < sorted_nc[av] else 1
        au += 1
        av += 1
    du = bu - au
    dv = bv - av
    if du == dv:
        return 0
    return -1 if du < dv else 1


def refine_round(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices, const cnp.int32_t[::1] colours):
    cdef Py_ssize_t n = colours.shape[0]
    cdef Py_ssize_t m2 = indices.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int32), 0

    cdef Py_ssize_t k_old = 0
    cdef Py_ssize_t i, v, pos
    for i in range(n):
        if colours[i] >= k_old:
            k_old = colours[i] + 1

    # Sort neighbour colours within each adjacency segment using two
    # counting-sort passes (by colour, then stably back into segments).
    sorted_nc_arr = np.empty(m2, dtype=np.int32)
    cdef cnp.int32_t[::1] sorted_nc = sorted_nc_arr
    tmp_val_arr = np.empty(m2, dtype=np.int32)
    tmp_seg_arr = np.empty(m2, dtype=np.int32)
    cdef cnp.int32_t[::1] tval = tmp_val_arr
    cdef cnp.int32_t[::1] tseg = tmp_seg_arr
    offs_arr = np.zeros(k_old + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] offs = offs_arr
    cursor_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] cursor = cursor_arr

    cdef cnp.int32_t c
    for i in range(m2):
        offs[colours[indices[i]] + 1] += 1
    for i in range(k_old):
        offs[i + 1] += offs[i]
    for v in range(n):
        for i in range(indptr[v], indptr[v + 1]):
            c = colours[indices[i]]
            pos = offs[c]
            offs[c] = pos + 1
            tval[pos] = c
            tseg[pos] = <cnp.int32_t> v
    for v in range(n):
        cursor[v] = indptr[v]
    for i in range(m2):
        v = tseg[i]
        sorted_nc[cursor[v]] = tval[i]
        cursor[v] += 1

    # Bottom-up mergesort of vertex ids under the refinement key order.
    order_arr = np.arange(n, dtype=np.int64)
    buf_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] order = order_arr
    cdef cnp.int64_t[::1] buf = buf_arr
    cdef cnp.int64_t[::1] swap
    cdef Py_ssize_t run = 1, lo, mid, hi, a, b, t
    while run < n:
        lo = 0
        while lo < n:
            mid = lo + run
            if mid >= n:
                while lo < n:
                    buf[lo] = order[lo]
                    lo += 1
                break
            hi = mid + run
            if hi > n:
                hi = n
            a = lo
            b = mid
            t = lo
            while a < mid and b < hi:
                if _key_cmp(order[a], order[b], colours, sorted_nc, indptr) <= 0:
                    buf[t] = order[a]
                    a += 1
                else:
                    buf[t] = order[b]
                    b += 1
                t += 1
            while a < mid:
                buf[t] = order[a]
                a += 1
                t += 1
            while b < hi:
                buf[t] = order[b]
                b += 1
                t += 1
            lo = hi
        swap = order
        order = buf
        buf = swap
        run *= 2

    new_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] newc = new_arr
    cdef cnp.int32_t cur = 0
    newc[order[0]] = 0
    for i in range(1, n):
        if _key_cmp(order[i - 1], order[i], colours, sorted_nc, indptr) != 0:
            cur += 1
        newc[order[i]] = cur
    return new_arr, <int> cur + 1


def bfs_distances(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices, const cnp.int64_t[::1] sources):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, v, u, i
    for i in range(sources.shape[0]):
        v = sources[i]
        if dist[v] < 0:
            dist[v] = 0
            queue[tail] = v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for i in range(indptr[v], indptr[v + 1]):
            u = indices[i]
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue[tail] = u
                tail += 1
    return dist_arr


def all_eccentricities(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    ecc_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] ecc = ecc_arr
    seen_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] seen = seen_arr
    dist_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] queue = queue_arr
    cdef bint connected = True
    cdef Py_ssize_t s, head, tail, v, u, i
    for s in range(n):
        head = 0
        tail = 0
        seen[s] = s
        dist[s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            for i in range(indptr[v], indptr[v + 1]):
                u = indices[i]
                if seen[u] != s:
                    seen[u] = s
                    dist[u] = dist[v] + 1
                    queue[tail] = u
                    tail += 1
        ecc[s] = dist[queue[tail - 1]]
        if tail < n:
            connected = False
    return ecc_arr, bool(connected)


def triangle_counts(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    t_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] t = t_arr
    cdef Py_ssize_t u, v, iu, eu, ju, jv, ev, lo, hi, mid
    cdef cnp.int32_t a, b
    for u in range(n):
        eu = indptr[u + 1]
        iu = indptr[u]
        while iu < eu:
            v = indices[iu]
            if v > u:
                ju = iu + 1
                lo = indptr[v]
                hi = indptr[v + 1]
                while lo < hi:
                    mid = (lo + hi) // 2
                    if indices[mid] <= v:
                        lo = mid + 1
                    else:
                        hi = mid
                jv = lo
                ev = indptr[v + 1]
                while ju < eu and jv < ev:
                    a = indices[ju]
                    b = indices[jv]
                    if a < b:
                        ju += 1
                    elif b < a:
                        jv += 1
                    else:
                        t[u] += 1
                        t[v] += 1
                        t[a] += 1
                        ju += 1
                        jv += 1
            iu += 1
    return t_arr


cdef int _cmp_int64(const void* pa, const void* pb) noexcept nogil:
    cdef cnp.int64_t a = (<const cnp.int64_t*> pa)[0]
    cdef cnp.int64_t b = (<const cnp.int64_t*> pb)[0]
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def first_simple_pairing(const cnp.int32_t[:, ::1] rows, Py_ssize_t n):
    cdef Py_ssize_t nrows = rows.shape[0]
    cdef Py_ssize_t k = rows.shape[1] // 2
    keys_arr = np.empty(max(k, 1), dtype=np.int64)
    cdef cnp.int64_t[::1] keys = keys_arr
    cdef Py_ssize_t r, i
    cdef cnp.int64_t a, b, tmp
    cdef bint ok
    for r in range(nrows):
        ok = True
        for i in range(k):
            a = rows[r, 2 * i]
            b = rows[r, 2 * i + 1]
            if a == b:
                ok = False
                break
            if a > b:
                tmp = a
                a = b
                b = tmp
            keys[i] = a * n + b
        if not ok:
            continue
        if k > 1:
            qsort(&keys[0], k, sizeof(cnp.int64_t), _cmp_int64)
            for i in range(k - 1):
                if keys[i] == keys[i + 1]:
                    ok = False
                    break
        if ok:
            return r
    return -1
