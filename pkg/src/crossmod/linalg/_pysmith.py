"""Pure-Python Smith normal form kernel on lists of Python ints.

The compiled kernel in ``_csmith.pyx`` runs the same elimination step for
step on int64 storage, so both produce identical ``U``, ``D``, ``V``.
"""

from __future__ import annotations


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def rquot(a, b):
    """Nearest integer to ``a / b``, ties toward the floor."""
    q, r = divmod(a, b)
    if abs(r) > abs(b) - abs(r):
        q += 1
    return q


def smith(A, m, n, want_u=True, want_v=True, want_vinv=False):
    """Reduce ``A`` (list of ``m`` rows of length ``n``, modified in place).

    Returns ``(diag, U, V, Vinv)`` with ``U A V = diag(diag)`` padded by
    zeros; unrequested transforms are ``None``.
    """
    U = _identity(m) if want_u else None
    V = _identity(n) if want_v else None
    W = _identity(n) if want_vinv else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if W is not None:
            W[i], W[j] = W[j], W[i]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        ri, rt = A[i], A[t]
        for k in range(t, n):
            v = rt[k]
            if v:
                ri[k] -= q * v
        if U is not None:
            ui, ut = U[i], U[t]
            for k in range(m):
                v = ut[k]
                if v:
                    ui[k] -= q * v

    def col_sub(j, t, q, rows_nz):
        # col_j -= q * col_t
        for i in rows_nz:
            row = A[i]
            row[j] -= q * row[t]
        if V is not None:
            for row in V:
                v = row[t]
                if v:
                    row[j] -= q * v
        if W is not None:
            wt, wj = W[t], W[j]
            for k in range(n):
                v = wj[k]
                if v:
                    wt[k] += q * v

    t = 0
    while t < m and t < n:
        # Pivot: smallest |entry|, first in row-major order.
        best = 0
        pi = pj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = v if v > 0 else -v
                    if best == 0 or av < best:
                        best, pi, pj = av, i, j
                        if av == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    row_sub(i, t, rquot(v, p))
                    if A[i][t]:
                        clean = False
            rows_nz = [i for i in range(t, m) if A[i][t]]
            rt = A[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    col_sub(j, t, rquot(v, p), rows_nz)
                    if rt[j]:
                        clean = False
            if clean:
                break
            # A remainder is smaller than the pivot: move the smallest one in.
            best = 0
            bi = bj = -1
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    av = abs(v)
                    if best == 0 or av < best:
                        best, bi, bj = av, i, t
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    av = abs(v)
                    if best == 0 or av < best:
                        best, bi, bj = av, t, j
            if bi != t:
                swap_rows(bi, t)
            else:
                swap_cols(bj, t)
        t += 1

    r = t
    diag = [A[i][i] for i in range(r)]
    for i in range(r):
        if diag[i] < 0:
            diag[i] = -diag[i]
            A[i][i] = diag[i]
            if U is not None:
                U[i] = [-v for v in U[i]]

    # Divisibility chain via (gcd, lcm) replacements.
    for i in range(r):
        for j in range(i + 1, r):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, tt = xgcd(a, b)
            ag, bg = a // g, b // g
            if U is not None:
                # row_i += row_j, then row_j -= (b*tt/g) * row_i
                ui, uj = U[i], U[j]
                for k in range(m):
                    ui[k] += uj[k]
                c = bg * tt
                for k in range(m):
                    uj[k] -= c * ui[k]
            if V is not None:
                for row in V:
                    vi, vj = row[i], row[j]
                    row[i] = s * vi + tt * vj
                    row[j] = -bg * vi + ag * vj
            if W is not None:
                wi, wj = W[i], W[j]
                W[i] = [ag * x + bg * y for x, y in zip(wi, wj)]
                W[j] = [-tt * x + s * y for x, y in zip(wi, wj)]
            diag[i], diag[j] = g, a * bg
            A[i][i], A[j][j] = diag[i], diag[j]
    return diag, U, V, W
