# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse polynomial kernels.

Same interface as :mod:`ppvgroup._speedups._pykernels`.  Multiplication runs
on C arrays with an open-addressing table when keys and coefficients fit in
64 bits, and falls back to the Python kernel as soon as a key or coefficient
is too large or an intermediate sum overflows.
"""

from libc.stdlib cimport malloc, free

from . import _pykernels as _py

BACKEND = "cython"

cdef extern from *:
    """
    static int ppv_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int ppv_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int ppv_mul_ovf(long long a, long long b, long long *r) nogil
    int ppv_add_ovf(long long a, long long b, long long *r) nogil

ctypedef struct term_t:
    long long k
    long long c

cdef long long KEY_LIMIT = 1LL << 61
# below this many products the dict loop is just as fast
cdef Py_ssize_t SMALL = 16


cdef term_t *_load(dict d, Py_ssize_t *n):
    cdef Py_ssize_t i = 0
    cdef term_t *arr = <term_t *> malloc(len(d) * sizeof(term_t))
    if arr == NULL:
        raise MemoryError()
    try:
        for k, c in d.items():
            if not (0 <= k < KEY_LIMIT):
                free(arr)
                return NULL
            arr[i].k = k
            arr[i].c = c
            i += 1
    except OverflowError:
        free(arr)
        return NULL
    n[0] = i
    return arr


def add(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def sub(dict a, dict b):
    cdef dict out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def scale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef Py_ssize_t na, nb, i, j, n, cap, h, w
    if len(a) * len(b) <= SMALL:
        return _py.mul(a, b)
    cdef term_t *A = _load(a, &na)
    if A == NULL:
        return _py.mul(a, b)
    cdef term_t *B = _load(b, &nb)
    if B == NULL:
        free(A)
        return _py.mul(a, b)
    n = na * nb
    cap = 16
    while cap < 2 * n:
        cap <<= 1
    # open addressing; key -1 marks an empty slot (valid keys are >= 0)
    cdef term_t *T = <term_t *> malloc(cap * sizeof(term_t))
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if T == NULL or order == NULL:
        free(A)
        free(B)
        free(T)
        free(order)
        raise MemoryError()
    cdef bint overflow = False
    cdef long long k, c
    cdef unsigned long long mask = cap - 1
    with nogil:
        for h in range(cap):
            T[h].k = -1
        w = 0
        for i in range(na):
            for j in range(nb):
                k = A[i].k + B[j].k
                if ppv_mul_ovf(A[i].c, B[j].c, &c):
                    overflow = True
                    break
                h = <Py_ssize_t> ((<unsigned long long> k * 0x9E3779B97F4A7C15ULL) >> 20) & mask
                while T[h].k != -1 and T[h].k != k:
                    h = (h + 1) & mask
                if T[h].k == -1:
                    T[h].k = k
                    T[h].c = c
                    order[w] = h
                    w += 1
                elif ppv_add_ovf(T[h].c, c, &T[h].c):
                    overflow = True
                    break
            if overflow:
                break
    free(A)
    free(B)
    if overflow:
        free(T)
        free(order)
        return _py.mul(a, b)
    cdef dict out = {}
    for i in range(w):
        h = order[i]
        if T[h].c != 0:
            out[T[h].k] = T[h].c
    free(T)
    free(order)
    return out


def divexact(dict a, dict b, guard):
    return _py.divexact(a, b, guard)
