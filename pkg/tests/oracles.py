"""Shared brute-force constructions used as independent oracles in tests.

Everything here is built from first principles (maps, subsets, words), not
from the package's own family constructors, so expected values frozen in
the tests do not depend on the code under test.
"""

from itertools import product, permutations


def total_maps_table(n):
    """T_n: all maps [n]->[n] under composition (fg)(x) = f(g(x))."""
    maps = list(product(range(n), repeat=n))
    idx = {m: i for i, m in enumerate(maps)}
    table = [[idx[tuple(f[g[x]] for x in range(n))] for g in maps] for f in maps]
    return table, maps


def partial_maps_table(n):
    """PT_n: all partial maps [n]->[n], None marking undefined points."""
    els = list(product(list(range(n)) + [None], repeat=n))
    idx = {e: i for i, e in enumerate(els)}
    table = [[idx[partial_maps_compose(f, g)] for g in els] for f in els]
    return table, els


def partial_injections(n):
    """Elements of IS_n as tuples with None for undefined points."""
    els = []
    for dom_mask in range(1 << n):
        dom = [i for i in range(n) if dom_mask >> i & 1]
        for img in permutations(range(n), len(dom)):
            f = [None] * n
            for d, v in zip(dom, img):
                f[d] = v
            els.append(tuple(f))
    return els


def partial_maps_compose(f, g):
    """(fg)(x) = f(g(x)) where defined; None propagates."""
    return tuple(f[g[x]] if g[x] is not None else None for x in range(len(f)))


def symmetric_inverse_table(n):
    els = partial_injections(n)
    idx = {e: i for i, e in enumerate(els)}
    table = [[idx[partial_maps_compose(f, g)] for g in els] for f in els]
    return table, els


def rect_band_table(m, n):
    els = [(i, j) for i in range(m) for j in range(n)]
    idx = {e: k for k, e in enumerate(els)}
    table = [[idx[(a[0], b[1])] for b in els] for a in els]
    return table, els


def cyclic_table(m, r):
    """<x : x^{m+r} = x^m>: elements x^1..x^{m+r-1} at indices 0..m+r-2."""
    top = m + r - 1

    def red(e):
        while e > top:
            e -= r
        return e

    return [[red(i + j + 2) - 1 for j in range(top)] for i in range(top)]


def nc_table(m):
    """NC_m: nonempty subsets of an m-set, AB = A|B if disjoint else zero."""
    els = [frozenset(s) for k in range(1, m + 1) for s in _subsets(range(m), k)]
    els.append("z")
    idx = {e: i for i, e in enumerate(els)}

    def mul(a, b):
        if a == "z" or b == "z" or (a & b):
            return "z"
        return a | b

    return [[idx[mul(a, b)] for b in els] for a in els], els


def _subsets(universe, k):
    universe = list(universe)

    def rec(start, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, len(universe)):
            yield from rec(i + 1, chosen + [universe[i]])

    yield from rec(0, [])


def free_lrb_words(n):
    """Free left regular band on n letters: injective words including ()."""
    letters = range(n)
    words = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for a in letters:
                if a not in w:
                    nxt.append(w + (a,))
        words.extend(nxt)
        frontier = nxt
    return words


def lrb_concat(u, v):
    out = list(u)
    for a in v:
        if a not in out:
            out.append(a)
    return tuple(out)


def free_lrb_table(n):
    words = free_lrb_words(n)
    idx = {w: i for i, w in enumerate(words)}
    return [[idx[lrb_concat(u, v)] for v in words] for u in words], words


def chain_lattice_table(n):
    """Meet monoid of the chain 0 < 1 < ... < n-1; identity is the top."""
    return [[min(i, j) for j in range(n)] for i in range(n)]


def antichain_lattice_table(n):
    """Bottom 0, atoms 1..n, top n+1, as a meet monoid."""
    size = n + 2
    top = n + 1

    def meet(x, y):
        if x == y:
            return x
        if x == top:
            return y
        if y == top:
            return x
        return 0

    return [[meet(i, j) for j in range(size)] for i in range(size)]


def powerset_join_table(k):
    """Subsets of a k-set as bitmasks under union; identity is the empty set."""
    return [[i | j for j in range(1 << k)] for i in range(1 << k)]


def group_with_zero_table(invariants):
    """Abelian group with a fresh absorbing zero appended."""
    table, els = group_table(invariants)
    n = len(els)
    out = [row + [n] for row in table]
    out.append([n] * (n + 1))
    return out


def group_table(invariants):
    """Direct product of cyclic groups Z/d for d in invariants."""
    els = list(product(*[range(d) for d in invariants]))
    idx = {e: i for i, e in enumerate(els)}
    table = [
        [idx[tuple((x + y) % d for x, y, d in zip(a, b, invariants))] for b in els]
        for a in els
    ]
    return table, els


def binary_relations_table(n):
    """B_n: relations on [n] as bitmasks (bit i*n+j), relational composition."""
    size = 1 << (n * n)
    table = [[0] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            c = 0
            for i in range(n):
                for j in range(n):
                    if any(
                        a >> (i * n + k) & 1 and b >> (k * n + j) & 1
                        for k in range(n)
                    ):
                        c |= 1 << (i * n + j)
            table[a][b] = c
    return table


def mat2_table(q):
    """Multiplicative monoid of 2x2 matrices over the prime field F_q."""
    els = [(a, b, c, d) for a in range(q) for b in range(q)
           for c in range(q) for d in range(q)]
    idx = {m: i for i, m in enumerate(els)}
    table = [[0] * len(els) for _ in els]
    for i, (a, b, c, d) in enumerate(els):
        for j, (e, f, g, h) in enumerate(els):
            table[i][j] = idx[
                ((a * e + b * g) % q, (a * f + b * h) % q,
                 (c * e + d * g) % q, (c * f + d * h) % q)
            ]
    return table, els


def rees_matrix_table(G, P):
    """M0(G; n, m; P): triples (i, g, lam) plus a final zero.

    G is a raw group table on local indices 0..k-1 with identity 0; P has m
    rows and n columns with entries local group indices or None for zero.
    Product: (i,g,lam)(j,h,mu) = (i, g*P[lam][j]*h, mu), zero when the entry
    is None.
    """
    m, n = len(P), len(P[0])
    k = len(G)
    els = [(i, g, lam) for i in range(n) for g in range(k) for lam in range(m)]
    idx = {t: i for i, t in enumerate(els)}
    z = len(els)
    table = [[z] * (z + 1) for _ in range(z + 1)]
    for x, (i, g, lam) in enumerate(els):
        for y, (j, h, mu) in enumerate(els):
            p = P[lam][j]
            if p is not None:
                table[x][y] = idx[(i, G[g][G[p][h]], mu)]
    return table


def brute_effdim_over_fq(table, q, d_max, identity=None):
    """Least d <= d_max with an effective d-dim module over F_q, or None.

    Enumerates every map from the semigroup into d x d matrices mod q, so it
    is only usable for tiny tables; monoids additionally require the identity
    to act as the identity matrix.
    """
    n = len(table)
    for d in range(1, d_max + 1):
        def mul(a, b):
            return tuple(
                sum(a[i * d + k] * b[k * d + j] for k in range(d)) % q
                for i in range(d) for j in range(d)
            )

        eye = tuple(1 if i == j else 0 for i in range(d) for j in range(d))
        mats = list(product(range(q), repeat=d * d))
        for img in product(mats, repeat=n):
            if len(set(img)) != n:
                continue
            if identity is not None and img[identity] != eye:
                continue
            if all(mul(img[a], img[b]) == img[table[a][b]]
                   for a in range(n) for b in range(n)):
                return d
    return None
