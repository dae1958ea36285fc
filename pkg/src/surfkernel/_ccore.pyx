# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernels; same contracts as ``surfkernel._pycore``."""

from libc.stdlib cimport malloc, realloc, free


cdef struct Stack:
    long* data
    Py_ssize_t size
    Py_ssize_t cap


cdef inline int _init(Stack* s, Py_ssize_t cap) except -1:
    if cap < 16:
        cap = 16
    s.data = <long*>malloc(cap * sizeof(long))
    if s.data == NULL:
        raise MemoryError()
    s.size = 0
    s.cap = cap
    return 0


cdef inline int _push(Stack* s, long y) except -1:
    cdef long* grown
    if s.size and s.data[s.size - 1] == -y:
        s.size -= 1
        return 0
    if s.size == s.cap:
        grown = <long*>realloc(s.data, 2 * s.cap * sizeof(long))
        if grown == NULL:
            raise MemoryError()
        s.data = grown
        s.cap *= 2
    s.data[s.size] = y
    s.size += 1
    return 0


cdef inline tuple _pack(Stack* s, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t i
    return tuple([s.data[i] for i in range(lo, hi)])


def free_reduce(letters):
    cdef Stack s
    cdef long x
    _init(&s, len(letters))
    try:
        for obj in letters:
            x = obj
            _push(&s, x)
        return _pack(&s, 0, s.size)
    finally:
        free(s.data)


def cyclic_reduce(letters):
    cdef Stack s
    cdef long x
    cdef Py_ssize_t i, j
    _init(&s, len(letters))
    try:
        for obj in letters:
            x = obj
            _push(&s, x)
        i = 0
        j = s.size - 1
        while i < j and s.data[i] == -s.data[j]:
            i += 1
            j -= 1
        return _pack(&s, i, j + 1)
    finally:
        free(s.data)


def inverse(letters):
    return tuple([-x for x in reversed(letters)])


def substitute(letters, dict images):
    cdef Stack s
    cdef long x, g, y
    cdef Py_ssize_t i, m
    cdef tuple rep
    _init(&s, 2 * len(letters))
    try:
        for obj in letters:
            x = obj
            g = x - 1 if x > 0 else -x - 1
            found = images.get(g)
            if found is None:
                _push(&s, x)
                continue
            rep = tuple(found)
            m = len(rep)
            if x > 0:
                for i in range(m):
                    y = rep[i]
                    _push(&s, y)
            else:
                for i in range(m - 1, -1, -1):
                    y = rep[i]
                    _push(&s, -y)
        return _pack(&s, 0, s.size)
    finally:
        free(s.data)


def evaluate(letters, images, const long long[:, ::1] table, const long long[::1] inverse_of):
    cdef long long g = 0
    cdef long x
    cdef long long[::1] img = _as_int64(images)
    for obj in letters:
        x = obj
        if x > 0:
            g = table[g, img[x - 1]]
        else:
            g = table[g, inverse_of[img[-x - 1]]]
    return int(g)


def rewrite(letters, images, const long long[:, ::1] table, const long long[::1] inverse_of,
            long nsym, long start=0):
    cdef Stack s
    cdef long x, v, y
    cdef long long c = start
    cdef long long[::1] img = _as_int64(images)
    _init(&s, len(letters))
    try:
        for obj in letters:
            x = obj
            if x > 0:
                v = x - 1
                y = c * nsym + v + 1
                c = table[c, img[v]]
            else:
                v = -x - 1
                c = table[c, inverse_of[img[v]]]
                y = -(c * nsym + v + 1)
            _push(&s, y)
        return _pack(&s, 0, s.size), int(c)
    finally:
        free(s.data)


def abelianize(letters, Py_ssize_t size):
    cdef list counts = [0] * size
    cdef long x
    for obj in letters:
        x = obj
        if x > 0:
            counts[x - 1] += 1
        else:
            counts[-x - 1] -= 1
    return counts


def singletons(letters):
    cdef dict seen = {}
    cdef long x, g
    for obj in letters:
        x = obj
        g = x - 1 if x > 0 else -x - 1
        seen[g] = seen.get(g, 0) + 1
    return tuple(sorted([g for g, c in seen.items() if c == 1]))


cdef long long[::1] _as_int64(images):
    import numpy as np
    return np.ascontiguousarray(images, dtype=np.int64)
