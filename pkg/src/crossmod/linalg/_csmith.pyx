# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on int64 storage.

Mirrors ``_pysmith.smith`` operation for operation.  Any int64 overflow
raises ``OverflowError`` so the caller can rerun on Python ints.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef extern from *:
    """
    #include <limits.h>
    static inline int cs_mulsub(long long a, long long q, long long b, long long *out) {
        long long p;
        if (__builtin_mul_overflow(q, b, &p)) return 1;
        if (__builtin_sub_overflow(a, p, out)) return 1;
        return *out == LLONG_MIN;
    }
    static inline int cs_muladd2(long long s, long long x, long long t, long long y, long long *out) {
        long long p, q;
        if (__builtin_mul_overflow(s, x, &p)) return 1;
        if (__builtin_mul_overflow(t, y, &q)) return 1;
        if (__builtin_add_overflow(p, q, out)) return 1;
        return *out == LLONG_MIN;
    }
    static inline int cs_mul(long long a, long long b, long long *out) {
        if (__builtin_mul_overflow(a, b, out)) return 1;
        return *out == LLONG_MIN;
    }
    """
    int cs_mulsub(i64 a, i64 q, i64 b, i64 *out) nogil
    int cs_muladd2(i64 s, i64 x, i64 t, i64 y, i64 *out) nogil
    int cs_mul(i64 a, i64 b, i64 *out) nogil


cdef inline i64 iabs(i64 v) nogil:
    return -v if v < 0 else v


cdef inline i64 rdiv(i64 a, i64 b) nogil:
    # nearest quotient, ties toward the floor (matches _pysmith.rquot)
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    cdef i64 r = a - q * b
    if iabs(r) > iabs(b) - iabs(r):
        q += 1
    return q


cdef int _ovf() except -1:
    raise OverflowError("int64 overflow in compiled Smith kernel")


cdef void swap_rows(i64[:, ::1] X, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef i64 tmp
    for k in range(X.shape[1]):
        tmp = X[i, k]
        X[i, k] = X[j, k]
        X[j, k] = tmp


cdef void swap_cols(i64[:, ::1] X, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef i64 tmp
    for k in range(X.shape[0]):
        tmp = X[k, i]
        X[k, i] = X[k, j]
        X[k, j] = tmp


cdef int row_sub(i64[:, ::1] X, Py_ssize_t i, Py_ssize_t t, i64 q, Py_ssize_t start) except -1:
    # X[i, :] -= q * X[t, :]
    cdef Py_ssize_t k
    cdef i64 v, out
    for k in range(start, X.shape[1]):
        v = X[t, k]
        if v != 0:
            if cs_mulsub(X[i, k], q, v, &out):
                _ovf()
            X[i, k] = out
    return 0


cdef int col_sub(i64[:, ::1] X, Py_ssize_t j, Py_ssize_t t, i64 q) except -1:
    # X[:, j] -= q * X[:, t]
    cdef Py_ssize_t k
    cdef i64 v, out
    for k in range(X.shape[0]):
        v = X[k, t]
        if v != 0:
            if cs_mulsub(X[k, j], q, v, &out):
                _ovf()
            X[k, j] = out
    return 0


def smith(cnp.ndarray[i64, ndim=2] A_in, bint want_u=True, bint want_v=True, bint want_vinv=False):
    """Same contract as ``_pysmith.smith`` but on an int64 array (copied)."""
    cdef i64[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.int64).copy()
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef i64[:, ::1] U = np.eye(m if want_u else 0, dtype=np.int64)
    cdef i64[:, ::1] V = np.eye(n if want_v else 0, dtype=np.int64)
    cdef i64[:, ::1] W = np.eye(n if want_vinv else 0, dtype=np.int64)
    cdef Py_ssize_t t = 0, i, j, k, pi, pj, bi, bj, r
    cdef i64 best, av, v, p, q, out, a, b, g, s, tt, ag, bg, c, x, y
    cdef i64 s0, s1, t0, t1, aa, bb, qq, tmp
    cdef bint clean, found1
    cdef i64[::1] diag

    while t < m and t < n:
        best = 0
        pi = -1
        pj = -1
        found1 = False
        for i in range(t, m):
            for j in range(t, n):
                v = A[i, j]
                if v != 0:
                    if v == -9223372036854775807 - 1:
                        _ovf()
                    av = iabs(v)
                    if best == 0 or av < best:
                        best = av
                        pi = i
                        pj = j
                        if av == 1:
                            found1 = True
                            break
            if found1:
                break
        if best == 0:
            break
        if pi != t:
            swap_rows(A, pi, t)
            if want_u:
                swap_rows(U, pi, t)
        if pj != t:
            swap_cols(A, pj, t)
            if want_v:
                swap_cols(V, pj, t)
            if want_vinv:
                swap_rows(W, pj, t)
        while True:
            clean = True
            p = A[t, t]
            for i in range(t + 1, m):
                v = A[i, t]
                if v != 0:
                    q = rdiv(v, p)
                    row_sub(A, i, t, q, t)
                    if want_u:
                        row_sub(U, i, t, q, 0)
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                v = A[t, j]
                if v != 0:
                    q = rdiv(v, p)
                    col_sub(A, j, t, q)
                    if want_v:
                        col_sub(V, j, t, q)
                    if want_vinv:
                        # row_t += q * row_j
                        for k in range(n):
                            x = W[j, k]
                            if x != 0:
                                if cs_mulsub(W[t, k], -q, x, &out):
                                    _ovf()
                                W[t, k] = out
                    if A[t, j] != 0:
                        clean = False
            if clean:
                break
            best = 0
            bi = -1
            bj = -1
            for i in range(t + 1, m):
                v = A[i, t]
                if v != 0:
                    av = iabs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = i
                        bj = t
            for j in range(t + 1, n):
                v = A[t, j]
                if v != 0:
                    av = iabs(v)
                    if best == 0 or av < best:
                        best = av
                        bi = t
                        bj = j
            if bi != t:
                swap_rows(A, bi, t)
                if want_u:
                    swap_rows(U, bi, t)
            else:
                swap_cols(A, bj, t)
                if want_v:
                    swap_cols(V, bj, t)
                if want_vinv:
                    swap_rows(W, bj, t)
        t += 1

    r = t
    diag = np.zeros(r, dtype=np.int64)
    for i in range(r):
        diag[i] = A[i, i]
        if diag[i] < 0:
            diag[i] = -diag[i]
            if want_u:
                for k in range(m):
                    U[i, k] = -U[i, k]

    for i in range(r):
        for j in range(i + 1, r):
            a = diag[i]
            b = diag[j]
            if b % a == 0:
                continue
            # extended gcd
            aa = a
            bb = b
            s0 = 1
            s1 = 0
            t0 = 0
            t1 = 1
            while bb != 0:
                qq = aa / bb
                tmp = aa - qq * bb
                aa = bb
                bb = tmp
                tmp = s0 - qq * s1
                s0 = s1
                s1 = tmp
                tmp = t0 - qq * t1
                t0 = t1
                t1 = tmp
            g = aa
            s = s0
            tt = t0
            ag = a / g
            bg = b / g
            if want_u:
                if cs_mul(bg, tt, &c):
                    _ovf()
                for k in range(m):
                    if cs_mulsub(U[i, k], -1, U[j, k], &out):
                        _ovf()
                    U[i, k] = out
                for k in range(m):
                    if cs_mulsub(U[j, k], c, U[i, k], &out):
                        _ovf()
                    U[j, k] = out
            if want_v:
                for k in range(n):
                    x = V[k, i]
                    y = V[k, j]
                    if cs_muladd2(s, x, tt, y, &out):
                        _ovf()
                    V[k, i] = out
                    if cs_muladd2(-bg, x, ag, y, &out):
                        _ovf()
                    V[k, j] = out
            if want_vinv:
                for k in range(n):
                    x = W[i, k]
                    y = W[j, k]
                    if cs_muladd2(ag, x, bg, y, &out):
                        _ovf()
                    W[i, k] = out
                    if cs_muladd2(-tt, x, s, y, &out):
                        _ovf()
                    W[j, k] = out
            diag[i] = g
            if cs_mul(a, bg, &out):
                _ovf()
            diag[j] = out
    return (
        np.asarray(diag),
        np.asarray(U) if want_u else None,
        np.asarray(V) if want_v else None,
        np.asarray(W) if want_vinv else None,
    )
