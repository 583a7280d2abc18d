"""Compiled top-down walk over the chains V_mu < ... < V_s of G(H)(F_p).

Only counts leave this module.  A chain is built from the top: V_s = R_s,
and V_(i-1) runs over every subspace of dimension d_(i-1) inside
R_(-1) V_i.  Each finished chain adds one to the histogram slot encoding
its tau vector (tau_mu, ..., tau_(s-1)).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _rref(M, nrows, ncols, p, piv):
    """In-place Gauss-Jordan mod p on the leading nrows x ncols block; returns the rank."""
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = -1
        for t in range(r, nrows):
            if M[t, c] % p != 0:
                k = t
                break
        if k < 0:
            continue
        if k != r:
            for j in range(ncols):
                tmp = M[r, j]
                M[r, j] = M[k, j]
                M[k, j] = tmp
        inv = 1
        a = M[r, c] % p
        # Fermat inverse
        e = p - 2
        b = a
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for j in range(ncols):
            M[r, j] = M[r, j] * inv % p
        for t in range(nrows):
            if t != r:
                f = M[t, c] % p
                if f != 0:
                    for j in range(ncols):
                        M[t, j] = (M[t, j] - f * M[r, j]) % p
        piv[r] = c
        r += 1
    return r


@njit(cache=True)
def _null_space(M, rk, ncols, piv, p):
    """Rows spanning {v : M v = 0} for an RREF block of rank rk."""
    out = np.zeros((ncols - rk, ncols), dtype=np.int64)
    is_piv = np.zeros(ncols, dtype=np.bool_)
    for r in range(rk):
        is_piv[piv[r]] = True
    t = 0
    for c in range(ncols):
        if is_piv[c]:
            continue
        out[t, c] = 1
        for r in range(rk):
            out[t, piv[r]] = (-M[r, c]) % p
        t += 1
    return out


@njit(cache=True)
def _divide(V, d, n, p):
    """Basis of R_(-1) V for V (d x n rows in R_(n-1)); returns an (m x n-1) array."""
    if d == n:
        out = np.zeros((n - 1, n - 1), dtype=np.int64)
        for j in range(n - 1):
            out[j, j] = 1
        return out
    M = V.copy()
    piv = np.zeros(n, dtype=np.int64)
    rk = _rref(M, d, n, p, piv)
    ann = _null_space(M, rk, n, piv, p)
    na = n - rk
    C = np.zeros((2 * na, n - 1), dtype=np.int64)
    for a in range(na):
        for j in range(n - 1):
            C[2 * a, j] = ann[a, j + 1]
            C[2 * a + 1, j] = ann[a, j]
    piv2 = np.zeros(n - 1, dtype=np.int64)
    rk2 = _rref(C, 2 * na, n - 1, p, piv2)
    return _null_space(C, rk2, n - 1, piv2, p)


@njit(cache=True)
def _tau(V, d, n, p):
    """dim R_1 V - dim V for V of full rank d in R_(n-1)."""
    M = np.zeros((2 * d, n + 1), dtype=np.int64)
    for r in range(d):
        for j in range(n):
            M[2 * r, j + 1] = V[r, j]
            M[2 * r + 1, j] = V[r, j]
    piv = np.zeros(n + 1, dtype=np.int64)
    return _rref(M, 2 * d, n + 1, p, piv) - d


@njit(cache=True)
def _walk(i, V, dims, mu, strides, p, hist, part, nparts, top, base):
    """Count chains below V = V_i; ``i`` is the degree of V, ``base`` the code so far."""
    n = i + 1
    U = _divide(V, dims[i], n, p)
    m = U.shape[0]
    d = dims[i - 1]
    if d > m:
        return 0
    if d == 0:
        # only possible below mu, never reached
        return 0
    # iterate over pivot combinations and free entries of a d x m RREF matrix
    comb = np.arange(d)
    C = np.zeros((d, m), dtype=np.int64)
    W = np.zeros((d, n - 1), dtype=np.int64)
    counter = 0
    while True:
        # free positions: row r, columns > comb[r] that are not pivots
        nfree = 0
        free_r = np.zeros(d * m, dtype=np.int64)
        free_c = np.zeros(d * m, dtype=np.int64)
        for r in range(d):
            for c in range(comb[r] + 1, m):
                ok = True
                for t in range(r + 1, d):
                    if comb[t] == c:
                        ok = False
                        break
                if ok:
                    free_r[nfree] = r
                    free_c[nfree] = c
                    nfree += 1
        vals = np.zeros(nfree, dtype=np.int64)
        while True:
            take = True
            if i == top:
                take = counter % nparts == part
                counter += 1
            if take:
                for r in range(d):
                    for c in range(m):
                        C[r, c] = 0
                    C[r, comb[r]] = 1
                for f in range(nfree):
                    C[free_r[f], free_c[f]] = vals[f]
                for r in range(d):
                    for j in range(n - 1):
                        acc = 0
                        for c in range(m):
                            if C[r, c] != 0:
                                acc += C[r, c] * U[c, j]
                        W[r, j] = acc % p
                t = _tau(W, d, n - 1, p)
                code = base + strides[i - 1 - mu] * (t - 1)
                if i - 1 == mu:
                    hist[code] += 1
                else:
                    _walk(i - 1, W.copy(), dims, mu, strides, p, hist, part, nparts, top, code)
            # odometer over free entries
            k = 0
            while k < nfree:
                vals[k] += 1
                if vals[k] < p:
                    break
                vals[k] = 0
                k += 1
            if k == nfree:
                break
        # next combination
        r = d - 1
        while r >= 0 and comb[r] == m - d + r:
            r -= 1
        if r < 0:
            break
        comb[r] += 1
        for t in range(r + 1, d):
            comb[t] = comb[t - 1] + 1
    return 0


def walk_counts(dims: dict, mu: int, s: int, taumax: list, p: int, part: int = 0, nparts: int = 1) -> np.ndarray:
    """Histogram of tau vectors over G(H)(F_p); slot index is mixed radix in (tau_i - 1).

    ``dims[i]`` is the ideal dimension in degree i, ``taumax[k]`` the largest
    tau in degree mu + k.
    """
    strides = np.ones(max(s - mu, 1), dtype=np.int64)
    size = 1
    for k in range(s - mu):
        strides[k] = size
        size *= taumax[k]
    hist = np.zeros(size, dtype=np.int64)
    if s == mu:
        if part == 0:
            hist[0] = 1
        return hist
    d_arr = np.zeros(s + 1, dtype=np.int64)
    for i, v in dims.items():
        d_arr[i] = v
    top = np.eye(s + 1, dtype=np.int64)
    _walk(s, top, d_arr, mu, strides, p, hist, part, nparts, s, 0)
    return hist
