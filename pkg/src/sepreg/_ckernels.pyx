# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures."""

from libc.stdint cimport uint64_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef inline bint _allowed(uint64_t mask, int a) nogil:
    return (mask >> a) & 1


def reach_masks(int n, const int[:] offsets, const int[:] syms, const int[:] dsts, allowed):
    cdef uint64_t mask = <uint64_t>allowed
    cdef int nbytes = (n + 7) // 8
    cdef int *stack = <int *>malloc(max(n, 1) * sizeof(int))
    cdef uint8_t *seen = <uint8_t *>malloc(max(nbytes, 1))
    cdef int src, top, p, q, i
    out = []
    try:
        for src in range(n):
            memset(seen, 0, nbytes)
            seen[src >> 3] |= 1 << (src & 7)
            stack[0] = src
            top = 1
            with nogil:
                while top:
                    top -= 1
                    p = stack[top]
                    for i in range(offsets[p], offsets[p + 1]):
                        if _allowed(mask, syms[i]):
                            q = dsts[i]
                            if not (seen[q >> 3] >> (q & 7)) & 1:
                                seen[q >> 3] |= 1 << (q & 7)
                                stack[top] = q
                                top += 1
            out.append(int.from_bytes((<char *>seen)[:nbytes], "little"))
    finally:
        free(stack)
        free(seen)
    return out


def scc(int n, const int[:] offsets, const int[:] syms, const int[:] dsts, allowed):
    cdef uint64_t mask = <uint64_t>allowed
    cdef int *index = <int *>malloc(max(n, 1) * sizeof(int))
    cdef int *low = <int *>malloc(max(n, 1) * sizeof(int))
    cdef int *comp = <int *>malloc(max(n, 1) * sizeof(int))
    cdef uint8_t *on_stack = <uint8_t *>malloc(max(n, 1))
    cdef int *stack = <int *>malloc(max(n, 1) * sizeof(int))
    cdef int *work_v = <int *>malloc(max(n, 1) * sizeof(int))
    cdef int *work_i = <int *>malloc(max(n, 1) * sizeof(int))
    cdef int counter = 0, ncomp = 0, sp = 0, wp = 0
    cdef int root, v, i, end, w, u, p, c
    cdef uint64_t *alpha
    try:
        with nogil:
            for i in range(n):
                index[i] = -1
                on_stack[i] = 0
            for root in range(n):
                if index[root] != -1:
                    continue
                index[root] = counter
                low[root] = counter
                counter += 1
                stack[sp] = root
                sp += 1
                on_stack[root] = 1
                work_v[0] = root
                work_i[0] = offsets[root]
                wp = 1
                while wp:
                    v = work_v[wp - 1]
                    i = work_i[wp - 1]
                    end = offsets[v + 1]
                    while i < end and not _allowed(mask, syms[i]):
                        i += 1
                    if i < end:
                        work_i[wp - 1] = i + 1
                        w = dsts[i]
                        if index[w] == -1:
                            index[w] = counter
                            low[w] = counter
                            counter += 1
                            stack[sp] = w
                            sp += 1
                            on_stack[w] = 1
                            work_v[wp] = w
                            work_i[wp] = offsets[w]
                            wp += 1
                        elif on_stack[w] and index[w] < low[v]:
                            low[v] = index[w]
                        continue
                    wp -= 1
                    if wp:
                        u = work_v[wp - 1]
                        if low[v] < low[u]:
                            low[u] = low[v]
                    if low[v] == index[v]:
                        while True:
                            sp -= 1
                            w = stack[sp]
                            on_stack[w] = 0
                            comp[w] = ncomp
                            if w == v:
                                break
                        ncomp += 1
        alpha = <uint64_t *>malloc(max(ncomp, 1) * sizeof(uint64_t))
        try:
            for c in range(ncomp):
                alpha[c] = 0
            for p in range(n):
                c = comp[p]
                for i in range(offsets[p], offsets[p + 1]):
                    if _allowed(mask, syms[i]) and comp[dsts[i]] == c:
                        alpha[c] |= (<uint64_t>1) << syms[i]
            comp_of = [comp[p] for p in range(n)]
            comp_alpha = [alpha[c] for c in range(ncomp)]
        finally:
            free(alpha)
    finally:
        free(index)
        free(low)
        free(comp)
        free(on_stack)
        free(stack)
        free(work_v)
        free(work_i)
    return comp_of, comp_alpha


def profile_extend(bytes prof, int a, const int[:] ext, int stride):
    cdef Py_ssize_t nbytes = len(prof)
    cdef bytearray out = bytearray(prof)
    cdef const unsigned char *src = prof
    cdef unsigned char *dst = out
    cdef Py_ssize_t byte, i
    cdef int bit, j
    cdef unsigned char b
    with nogil:
        for byte in range(nbytes):
            b = src[byte]
            while b:
                bit = 0
                while not (b >> bit) & 1:
                    bit += 1
                b &= b - 1
                i = byte * 8 + bit
                j = ext[i * stride + a]
                if j >= 0:
                    dst[j >> 3] |= 1 << (j & 7)
    return bytes(out)
