"""Vectorized numpy fallbacks for the hot kernels.

Same signatures and semantics as ``_kernels_numba``.  Candidate scans run
in lockstep over chunks: every candidate in a chunk executes the same
schedule with a liveness mask instead of early exits, which keeps the node
accounting identical to the jit path at limit/budget cuts.
"""

import numpy as np

_CHUNK = 8192


def assoc_witness(table):
    """Return the first triple (a, b, c) with (ab)c != a(bc), else (-1,-1,-1)."""
    n = table.shape[0]
    for a in range(n):
        left = table[table[a, :], :]
        right = table[a, table]
        if not np.array_equal(left, right):
            bad = np.nonzero(left != right)
            return a, int(bad[0][0]), int(bad[1][0])
    return -1, -1, -1


def reach_bitmaps(table):
    """Principal-ideal membership bitmaps (see the numba twin)."""
    n = table.shape[0]
    rows = np.arange(n)[:, None]
    R = np.zeros((n, n), bool)
    R[rows, table] = True
    R[np.arange(n), np.arange(n)] = True
    L = np.zeros((n, n), bool)
    L[rows, table.T] = True
    L[np.arange(n), np.arange(n)] = True
    J = np.zeros((n, n), bool)
    for s in range(n):
        J[s, table[table[:, s], :].ravel()] = True
    J |= R
    J |= L
    return R, L, J


def closure_mask(table, seed):
    """Subsemigroup closure of the seed set, as a boolean mask."""
    n = table.shape[0]
    mask = seed.copy()
    while True:
        idx = np.nonzero(mask)[0]
        if idx.size == 0:
            return mask
        new = np.zeros(n, bool)
        new[table[np.ix_(idx, idx)].ravel()] = True
        new |= mask
        if np.array_equal(new, mask):
            return mask
        mask = new


def ffield_rank(mat, add_t, mul_t, inv_t, neg_t):
    """Rank of a matrix of field codes by vectorized row elimination."""
    m = mat.copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = mul_t[inv_t[m[r, c]], m[r]]
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            f = neg_t[m[hit, c]]
            m[hit] = add_t[m[hit], mul_t[f[:, None], m[r][None, :]]]
        r += 1
    return r


def modp_rank(mat, p):
    """Rank of an int64 matrix reduced modulo a prime p (p^2 must fit int64)."""
    m = mat % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            f = (p - m[hit, c])[:, None]
            m[hit] = (m[hit] + f * m[r][None, :]) % p
        r += 1
    return r


def hom_witness_ffield(table, images, add_t, mul_t):
    """First pair (a, b) with phi(a)phi(b) != phi(ab), else (-1, -1)."""
    n, d = images.shape[0], images.shape[1]
    for a in range(n):
        A = images[a]
        acc = np.zeros((n, d, d), np.int64)
        for k in range(d):
            acc = add_t[acc, mul_t[A[:, k][None, :, None], images[:, k, :][:, None, :]]]
        bad = np.any(acc != images[table[a]], axis=(1, 2))
        if bad.any():
            return a, int(np.nonzero(bad)[0][0])
    return -1, -1


def hom_witness_int(table, images):
    """Same as hom_witness_ffield for exact int64 arithmetic (char 0)."""
    n = images.shape[0]
    for a in range(n):
        prod = images[a] @ images
        bad = np.any(prod != images[table[a]], axis=(1, 2))
        if bad.any():
            return a, int(np.nonzero(bad)[0][0])
    return -1, -1


def _run_ops_batch(ops, img, enc, alive, add_t, mul_t, div, d):
    # img: (C, n, d, d), enc: (C, n), alive: (C,) updated in place.
    for t in range(ops.shape[0]):
        mode, x, y, c = (int(v) for v in ops[t])
        if mode == 2:
            alive &= enc[:, x] != enc[:, y]
        else:
            A = img[:, x]
            B = img[:, y]
            acc = np.zeros(A.shape, np.int64)
            for k in range(d):
                acc = add_t[acc, mul_t[A[:, :, k][:, :, None], B[:, k, :][:, None, :]]]
            e = acc.reshape(acc.shape[0], -1) @ div
            if mode == 0:
                alive &= e == enc[:, c]
            else:
                img[:, c] = acc
                enc[:, c] = e


def _scan_chunk(ops, img0, enc0, elem, d, q, div, add_t, mul_t, cands):
    C = cands.shape[0]
    img = np.broadcast_to(img0, (C,) + img0.shape).copy()
    enc = np.broadcast_to(enc0, (C,) + enc0.shape).copy()
    M = ((cands[:, None] // div[None, :]) % q).reshape(C, d, d)
    img[:, elem] = M
    enc[:, elem] = cands
    alive = np.ones(C, bool)
    _run_ops_batch(ops, img, enc, alive, add_t, mul_t, div, d)
    return alive


def _collect(ops, img0, enc0, elem, d, q, div, add_t, mul_t, cand_iter, total, limit, budget):
    out = []
    nodes = 0
    pos = 0
    for cands in cand_iter:
        take = min(cands.shape[0], budget - nodes)
        if take <= 0:
            return np.array(out, np.int64), pos, nodes, 1
        cands = cands[:take]
        alive = _scan_chunk(ops, img0, enc0, elem, d, q, div, add_t, mul_t, cands)
        hits = np.nonzero(alive)[0]
        if len(out) + hits.size >= limit:
            need = limit - len(out)
            cut = int(hits[need - 1])
            out.extend(int(cands[i]) for i in hits[:need])
            nodes += cut + 1
            return np.array(out, np.int64), pos + cut + 1, nodes, 0
        out.extend(int(cands[i]) for i in hits)
        nodes += cands.shape[0]
        pos += cands.shape[0]
        if nodes >= budget and pos < total:
            return np.array(out, np.int64), pos, nodes, 1
    return np.array(out, np.int64), pos, nodes, 0


def scan_range(ops, img0, enc0, elem, d, q, div, add_t, mul_t, start, stop, limit, budget):
    """Lockstep version of the jit scan over [start, stop)."""

    def chunks():
        lo = start
        while lo < stop:
            hi = min(lo + _CHUNK, stop)
            yield np.arange(lo, hi, dtype=np.int64)
            lo = hi

    out, pos, nodes, flag = _collect(
        ops, img0, enc0, elem, d, q, div, add_t, mul_t, chunks(), stop - start, limit, budget
    )
    return out, start + pos, nodes, flag


def scan_list(ops, img0, enc0, elem, d, q, div, add_t, mul_t, cands, limit, budget):
    """Lockstep version of the jit scan over an explicit code list."""

    def chunks():
        for lo in range(0, cands.shape[0], _CHUNK):
            yield cands[lo : lo + _CHUNK]

    return _collect(
        ops, img0, enc0, elem, d, q, div, add_t, mul_t, chunks(), cands.shape[0], limit, budget
    )
