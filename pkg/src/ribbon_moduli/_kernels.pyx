# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical-traversal kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef int _fill(int size, int *s0, int *s1, int *lab, int start,
               int *new, int *order, int *enc) noexcept:
    cdef int i, h, nxt, head = 0, count = 1, k
    for i in range(size):
        new[i] = -1
    new[start] = 0
    order[0] = start
    while head < count:
        h = order[head]
        head += 1
        for k in range(2):
            nxt = s0[h] if k == 0 else s1[h]
            if new[nxt] < 0:
                new[nxt] = count
                order[count] = nxt
                count += 1
    if count != size:
        return -1
    for i in range(size):
        h = order[i]
        enc[i] = new[s0[h]]
        enc[size + i] = new[s1[h]]
        enc[2 * size + i] = lab[h]
    return 0


cdef int _cmp(int n, int *a, int *b) noexcept:
    cdef int i
    for i in range(n):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
    return 0


def traverse(sigma0, sigma1, labels, int start):
    cdef int size = len(sigma0), i
    cdef int *buf = <int *> malloc(sizeof(int) * 7 * size)
    if buf == NULL:
        raise MemoryError()
    cdef int *s0 = buf
    cdef int *s1 = buf + size
    cdef int *lab = buf + 2 * size
    cdef int *new = buf + 3 * size
    cdef int *order = buf + 4 * size
    cdef int *enc
    try:
        for i in range(size):
            s0[i] = sigma0[i]
            s1[i] = sigma1[i]
            lab[i] = labels[i]
        enc = <int *> malloc(sizeof(int) * 3 * size)
        if enc == NULL:
            raise MemoryError()
        try:
            if _fill(size, s0, s1, lab, start, new, order, enc) < 0:
                raise ValueError("half-edge system is not connected")
            return (tuple([enc[i] for i in range(3 * size)]),
                    [order[i] for i in range(size)])
        finally:
            free(enc)
    finally:
        free(buf)


def canonical(sigma0, sigma1, labels):
    cdef int size = len(sigma0), i, start, c
    cdef int n3 = 3 * size
    cdef int *buf = <int *> malloc(sizeof(int) * (5 * size + 2 * n3))
    if buf == NULL:
        raise MemoryError()
    cdef int *s0 = buf
    cdef int *s1 = buf + size
    cdef int *lab = buf + 2 * size
    cdef int *new = buf + 3 * size
    cdef int *order = buf + 4 * size
    cdef int *enc = buf + 5 * size
    cdef int *best = enc + n3
    cdef bint have = False
    orders = []
    try:
        for i in range(size):
            s0[i] = sigma0[i]
            s1[i] = sigma1[i]
            lab[i] = labels[i]
        for start in range(size):
            if _fill(size, s0, s1, lab, start, new, order, enc) < 0:
                raise ValueError("half-edge system is not connected")
            c = _cmp(n3, enc, best) if have else -1
            if c < 0:
                for i in range(n3):
                    best[i] = enc[i]
                have = True
                orders = [[order[i] for i in range(size)]]
            elif c == 0:
                orders.append([order[i] for i in range(size)])
        return tuple([best[i] for i in range(n3)]), orders
    finally:
        free(buf)
