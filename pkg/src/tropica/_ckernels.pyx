# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the subset dynamic programs in ``_pykernels``.

Same inputs and outputs; values are held in 64-bit ints, so the caller must
keep |entries| * n well below 2**62 (the wrapper in ``kernels`` checks).
"""
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 NEG = -(1LL << 62)

NEG_SENTINEL = NEG


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(unsigned long long x) nogil:
    return __builtin_popcountll(x)


cdef i64* _load(flat, int n) except NULL:
    cdef i64* a = <i64*> malloc(n * n * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    cdef int k
    for k in range(n * n):
        a[k] = flat[k]
    return a


def bidet(flat, int n):
    if n == 0:
        return 0, None
    if n > 24:
        raise ValueError("n too large for the subset kernel")
    cdef i64* a = _load(flat, n)
    cdef unsigned long long size = 1ULL << n
    cdef i64* even = <i64*> malloc(size * sizeof(i64))
    cdef i64* odd = <i64*> malloc(size * sizeof(i64))
    if even == NULL or odd == NULL:
        free(a); free(even); free(odd)
        raise MemoryError()
    cdef unsigned long long mask, nxt
    cdef int r, j, flip
    cdef i64 e, o, w
    with nogil:
        for mask in range(size):
            even[mask] = NEG
            odd[mask] = NEG
        even[0] = 0
        for mask in range(size):
            e = even[mask]
            o = odd[mask]
            if e == NEG and o == NEG:
                continue
            r = _popcount(mask)
            if r == n:
                continue
            for j in range(n):
                if mask & (1ULL << j):
                    continue
                w = a[r * n + j]
                if w == NEG:
                    continue
                nxt = mask | (1ULL << j)
                flip = _popcount(mask >> (j + 1)) & 1
                if flip:
                    if e != NEG and e + w > odd[nxt]:
                        odd[nxt] = e + w
                    if o != NEG and o + w > even[nxt]:
                        even[nxt] = o + w
                else:
                    if e != NEG and e + w > even[nxt]:
                        even[nxt] = e + w
                    if o != NEG and o + w > odd[nxt]:
                        odd[nxt] = o + w
    cdef i64 plus = even[size - 1]
    cdef i64 minus = odd[size - 1]
    free(a); free(even); free(odd)
    return (None if plus == NEG else plus), (None if minus == NEG else minus)


def perm_mult(flat, int n):
    if n == 0:
        return 0, 1
    if n > 24:
        raise ValueError("n too large for the subset kernel")
    cdef i64* a = _load(flat, n)
    cdef unsigned long long size = 1ULL << n
    cdef i64* best = <i64*> malloc(size * sizeof(i64))
    cdef unsigned char* mult = <unsigned char*> malloc(size)
    if best == NULL or mult == NULL:
        free(a); free(best); free(mult)
        raise MemoryError()
    cdef unsigned long long mask, nxt
    cdef int r, j, m
    cdef i64 b, w, v
    with nogil:
        for mask in range(size):
            best[mask] = NEG
            mult[mask] = 0
        best[0] = 0
        mult[0] = 1
        for mask in range(size):
            b = best[mask]
            if b == NEG:
                continue
            r = _popcount(mask)
            if r == n:
                continue
            m = mult[mask]
            for j in range(n):
                if mask & (1ULL << j):
                    continue
                w = a[r * n + j]
                if w == NEG:
                    continue
                nxt = mask | (1ULL << j)
                v = b + w
                if v > best[nxt]:
                    best[nxt] = v
                    mult[nxt] = m
                elif v == best[nxt]:
                    mult[nxt] = 2 if mult[nxt] + m >= 2 else mult[nxt] + m
    cdef i64 value = best[size - 1]
    cdef int count = mult[size - 1]
    free(a); free(best); free(mult)
    if value == NEG:
        return None, 0
    return value, count
