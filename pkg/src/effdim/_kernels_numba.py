"""Numba implementations of the hot kernels.

Signatures here must stay in lockstep with ``_kernels_numpy``; the backend
module picks one of the two at import time.  All tables and matrices are
int64, field elements are codes 0..q-1 interpreted through add/mul lookup
tables so that prime and extension fields run the same code.
"""

import numpy as np
from numba import njit

JIT_OPTS = dict(nogil=True, cache=True)


@njit(**JIT_OPTS)
def assoc_witness(table):
    """Return the first triple (a, b, c) with (ab)c != a(bc), else (-1,-1,-1)."""
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


@njit(**JIT_OPTS)
def reach_bitmaps(table):
    """Principal-ideal membership bitmaps.

    R[s, t] is true iff t lies in s S^1, L[s, t] iff t in S^1 s, and
    J[s, t] iff t in S^1 s S^1.
    """
    n = table.shape[0]
    R = np.zeros((n, n), np.bool_)
    L = np.zeros((n, n), np.bool_)
    J = np.zeros((n, n), np.bool_)
    for s in range(n):
        R[s, s] = True
        L[s, s] = True
        for x in range(n):
            R[s, table[s, x]] = True
            L[s, table[x, s]] = True
    for s in range(n):
        for x in range(n):
            xs = table[x, s]
            for y in range(n):
                J[s, table[xs, y]] = True
        for t in range(n):
            J[s, t] = J[s, t] or R[s, t] or L[s, t]
    return R, L, J


@njit(**JIT_OPTS)
def closure_mask(table, seed):
    """Subsemigroup closure of the seed set, as a boolean mask."""
    n = table.shape[0]
    mask = seed.copy()
    elems = np.empty(n, np.int64)
    cnt = 0
    for i in range(n):
        if mask[i]:
            elems[cnt] = i
            cnt += 1
    head = 0
    while head < cnt:
        a = elems[head]
        head += 1
        stop = cnt
        for idx in range(stop):
            b = elems[idx]
            for p in (table[a, b], table[b, a]):
                if not mask[p]:
                    mask[p] = True
                    elems[cnt] = p
                    cnt += 1
    return mask


@njit(**JIT_OPTS)
def ffield_rank(mat, add_t, mul_t, inv_t, neg_t):
    """Rank of a matrix of field codes by Gaussian elimination."""
    m = mat.copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        s = inv_t[m[r, c]]
        for j in range(c, cols):
            m[r, j] = mul_t[s, m[r, j]]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = neg_t[m[i, c]]
                for j in range(c, cols):
                    m[i, j] = add_t[m[i, j], mul_t[f, m[r, j]]]
        r += 1
    return r


@njit(**JIT_OPTS)
def modp_rank(mat, p):
    """Rank of an int64 matrix reduced modulo a prime p (p^2 must fit int64)."""
    m = np.empty_like(mat)
    rows, cols = mat.shape
    for i in range(rows):
        for j in range(cols):
            m[i, j] = mat[i, j] % p
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        # inverse of the pivot by binary exponentiation
        base = m[r, c]
        e = p - 2
        s = 1
        while e:
            if e & 1:
                s = s * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, cols):
            m[r, j] = m[r, j] * s % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = p - m[i, c]
                for j in range(c, cols):
                    m[i, j] = (m[i, j] + f * m[r, j]) % p
        r += 1
    return r


@njit(**JIT_OPTS)
def hom_witness_ffield(table, images, add_t, mul_t):
    """First pair (a, b) with phi(a)phi(b) != phi(ab), else (-1, -1)."""
    n, d = images.shape[0], images.shape[1]
    for a in range(n):
        for b in range(n):
            c = table[a, b]
            ok = True
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for k in range(d):
                        acc = add_t[acc, mul_t[images[a, i, k], images[b, k, j]]]
                    if acc != images[c, i, j]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                return a, b
    return -1, -1


@njit(**JIT_OPTS)
def hom_witness_int(table, images):
    """Same as hom_witness_ffield for exact int64 arithmetic (char 0)."""
    n, d = images.shape[0], images.shape[1]
    for a in range(n):
        for b in range(n):
            c = table[a, b]
            ok = True
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for k in range(d):
                        acc += images[a, i, k] * images[b, k, j]
                    if acc != images[c, i, j]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                return a, b
    return -1, -1


@njit(**JIT_OPTS)
def _run_ops(ops, img, enc, elem, M, menc, tmp, add_t, mul_t, div, d):
    # Straight-line consistency check: assign M to elem, then execute the
    # precomputed product/distinctness schedule.  Reads only touch entries
    # the schedule has already defined, so no state reset between calls.
    for i in range(d):
        for j in range(d):
            img[elem, i, j] = M[i, j]
    enc[elem] = menc
    for t in range(ops.shape[0]):
        mode = ops[t, 0]
        x = ops[t, 1]
        y = ops[t, 2]
        c = ops[t, 3]
        if mode == 2:
            if enc[x] == enc[y]:
                return False
        else:
            e = 0
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for k in range(d):
                        acc = add_t[acc, mul_t[img[x, i, k], img[y, k, j]]]
                    tmp[i, j] = acc
                    e += acc * div[i * d + j]
            if mode == 0:
                if e != enc[c]:
                    return False
            else:
                for i in range(d):
                    for j in range(d):
                        img[c, i, j] = tmp[i, j]
                enc[c] = e
    return True


@njit(**JIT_OPTS)
def scan_range(ops, img0, enc0, elem, d, q, div, add_t, mul_t, start, stop, limit, budget):
    """Try every candidate matrix code in [start, stop) against the schedule.

    Returns (survivors, next_cand, nodes, budget_hit).  Stops early once
    `limit` survivors are found or `budget` candidates were examined.
    """
    img = img0.copy()
    enc = enc0.copy()
    out = np.empty(limit, np.int64)
    cnt = 0
    nodes = 0
    M = np.empty((d, d), np.int64)
    tmp = np.empty((d, d), np.int64)
    cand = start
    while cand < stop:
        if nodes >= budget:
            return out[:cnt].copy(), cand, nodes, 1
        nodes += 1
        for pos in range(d * d):
            M[pos // d, pos % d] = (cand // div[pos]) % q
        if _run_ops(ops, img, enc, elem, M, cand, tmp, add_t, mul_t, div, d):
            out[cnt] = cand
            cnt += 1
            if cnt >= limit:
                return out[:cnt].copy(), cand + 1, nodes, 0
        cand += 1
    return out[:cnt].copy(), stop, nodes, 0


@njit(**JIT_OPTS)
def scan_list(ops, img0, enc0, elem, d, q, div, add_t, mul_t, cands, limit, budget):
    """Like scan_range but candidates come from an explicit code list."""
    img = img0.copy()
    enc = enc0.copy()
    out = np.empty(limit, np.int64)
    cnt = 0
    nodes = 0
    M = np.empty((d, d), np.int64)
    tmp = np.empty((d, d), np.int64)
    for idx in range(cands.shape[0]):
        if nodes >= budget:
            return out[:cnt].copy(), idx, nodes, 1
        nodes += 1
        cand = cands[idx]
        for pos in range(d * d):
            M[pos // d, pos % d] = (cand // div[pos]) % q
        if _run_ops(ops, img, enc, elem, M, cand, tmp, add_t, mul_t, div, d):
            out[cnt] = cand
            cnt += 1
            if cnt >= limit:
                return out[:cnt].copy(), idx + 1, nodes, 0
    return out[:cnt].copy(), cands.shape[0], nodes, 0
