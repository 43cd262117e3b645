"""Path, truncated-path, and incidence semigroups of finite quivers.

Paths multiply by concatenation when the endpoints match and fall to the zero
otherwise; a quiver representation assigns a space to each vertex and a map
rho_e from the target space to the source space of each edge, and linearizes
to a module on the block sum of the vertex spaces.  Generic scalar or
strictly-upper-block choices give verified effective witnesses; the incidence
witness is the deterministic natural representation.
"""

import random
from dataclasses import dataclass
from string import ascii_lowercase

from .cayley import validate
from .errors import (
    EffdimError,
    NotAcyclicError,
    RetriesExhaustedError,
    TooLargeError,
)
from .linalg import Matrix
from .nilpotent import GenericSample, _random_strict_upper
from .reps import MatrixRep, verify

_RETRY_CAP = 32

_ELEMENT_CAP = 4096


def _sccs(n, arcs):
    """Strongly connected components as vertex tuples (Kosaraju)."""
    out = [[] for _ in range(n)]
    rev = [[] for _ in range(n)]
    for s, t in arcs:
        out[s].append(t)
        rev[t].append(s)
    order, seen = [], [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, 0)]
        while stack:
            v, i = stack[-1]
            if i < len(out[v]):
                stack[-1] = (v, i + 1)
                w = out[v][i]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                stack.pop()
                order.append(v)
    comp = [-1] * n
    k = 0
    for root in reversed(order):
        if comp[root] >= 0:
            continue
        comp[root] = k
        stack = [root]
        while stack:
            v = stack.pop()
            for w in rev[v]:
                if comp[w] < 0:
                    comp[w] = k
                    stack.append(w)
        k += 1
    groups = [[] for _ in range(k)]
    for v in range(n):
        groups[comp[v]].append(v)
    return [tuple(g) for g in groups]


class Quiver:
    """Finite directed multigraph with derived cycle structure."""

    __slots__ = ("vertices", "edges", "sccs", "acyclic")

    def __init__(self, vertices, edges):
        self.vertices = [str(v) for v in vertices]
        n = len(self.vertices)
        norm = []
        for i, e in enumerate(edges):
            if len(e) == 2:
                s, t = e
                label = ascii_lowercase[i] if len(edges) <= 26 else f"e{i}"
            else:
                s, t, label = e
            if not (0 <= s < n and 0 <= t < n):
                raise EffdimError(f"edge {i} endpoints out of range for {n} vertices")
            norm.append((int(s), int(t), str(label)))
        self.edges = norm
        self.sccs = _sccs(n, [(s, t) for s, t, _ in norm])
        has_loop = any(s == t for s, t, _ in norm)
        self.acyclic = not has_loop and all(len(c) == 1 for c in self.sccs)

    def every_vertex_on_cycle(self):
        """Each strongly connected component carries an edge."""
        at = {v: k for k, c in enumerate(self.sccs) for v in c}
        withedge = {at[s] for s, t, _ in self.edges if at[s] == at[t]}
        return all(k in withedge for k in range(len(self.sccs)))

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"src": s, "dst": t, "label": l} for s, t, l in self.edges],
        }

    @classmethod
    def from_json(cls, obj):
        if "relation" in obj:
            return cls.from_poset(obj)
        edges = [(e["src"], e["dst"], e.get("label", f"e{i}"))
                 for i, e in enumerate(obj["edges"])]
        return cls(obj["vertices"], edges)

    @classmethod
    def from_poset(cls, obj):
        """Shorthand {"relation": [[i,j],...]}: transitive closure as edges."""
        pairs = {(int(a), int(b)) for a, b in obj["relation"]}
        for a, b in pairs:
            if a == b:
                raise EffdimError("poset relation must not contain loops")
        top = max((max(a, b) for a, b in pairs), default=-1)
        verts = obj.get("vertices")
        if verts is None:
            verts = [str(i) for i in range(top + 1)]
        elif isinstance(verts, int):
            verts = [str(i) for i in range(verts)]
        if top >= len(verts):
            raise EffdimError("relation index outside the vertex list")
        changed = True
        while changed:
            changed = False
            for a, b in list(pairs):
                for c, d in list(pairs):
                    if b == c and (a, d) not in pairs:
                        if a == d:
                            raise EffdimError("poset relation has a cycle")
                        pairs.add((a, d))
                        changed = True
        edges = [(a, b, f"{verts[a]}<{verts[b]}") for a, b in sorted(pairs)]
        return cls(verts, edges)


def _paths(Q, max_len):
    """(source, edge tuple) pairs ordered by length then edge order."""
    n = len(Q.vertices)
    by_src = [[] for _ in range(n)]
    for i, (s, _, _) in enumerate(Q.edges):
        by_src[s].append(i)
    paths = [(x, ()) for x in range(n)]
    frontier = [(x, (), x) for x in range(n)]
    length = 0
    while frontier and (max_len is None or length < max_len):
        nxt = []
        for src, es, end in frontier:
            for i in by_src[end]:
                nxt.append((src, es + (i,), Q.edges[i][1]))
        nxt.sort(key=lambda rec: rec[1])
        paths.extend((src, es) for src, es, _ in nxt)
        if len(paths) > _ELEMENT_CAP:
            raise TooLargeError(f"more than {_ELEMENT_CAP} paths")
        frontier = nxt
        length += 1
    return paths


def _endpoint(Q, p):
    src, es = p
    return Q.edges[es[-1]][1] if es else src


def _path_name(Q, p):
    src, es = p
    if not es:
        return f"({Q.vertices[src]})"
    return "".join(Q.edges[i][2] for i in es)


def _path_table(Q, paths, cutoff):
    idx = {p: i for i, p in enumerate(paths)}
    z = len(paths)
    t = [[z] * (z + 1) for _ in range(z + 1)]
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if _endpoint(Q, p) != q[0]:
                continue
            joined = (p[0], p[1] + q[1])
            if cutoff is not None and len(joined[1]) >= cutoff:
                continue
            t[i][j] = idx[joined]
    names = [_path_name(Q, p) for p in paths] + ["z"]
    return validate(t, names)


def _reachable_pairs(Q):
    n = len(Q.vertices)
    reach = [{x} for x in range(n)]
    changed = True
    while changed:
        changed = False
        for s, t, _ in Q.edges:
            for x in range(n):
                if s in reach[x] and t not in reach[x]:
                    reach[x].add(t)
                    changed = True
    diag = [(x, x) for x in range(n)]
    rest = sorted((x, y) for x in range(n) for y in reach[x] if y != x)
    return diag + rest


def _incidence_table(Q):
    pairs = _reachable_pairs(Q)
    idx = {p: i for i, p in enumerate(pairs)}
    z = len(pairs)
    t = [[z] * (z + 1) for _ in range(z + 1)]
    for i, (x, y) in enumerate(pairs):
        for j, (u, v) in enumerate(pairs):
            if y == u:
                t[i][j] = idx[(x, v)]
    names = [
        f"({Q.vertices[x]})" if x == y else f"{Q.vertices[x]}<{Q.vertices[y]}"
        for x, y in pairs
    ] + ["z"]
    return validate(t, names)


def build(kind, Q, N=None):
    """Cayley table of P(Q), P(Q)/J^N, or I(Q); the zero is the last element."""
    if kind == "path":
        if not Q.acyclic:
            raise NotAcyclicError("path semigroups need an acyclic quiver")
        return _path_table(Q, _paths(Q, None), None)
    if kind == "truncated":
        if N is None or N < 1:
            raise EffdimError("truncated path semigroups need N >= 1")
        return _path_table(Q, _paths(Q, N - 1), N)
    if kind == "incidence":
        if not Q.acyclic:
            raise NotAcyclicError("incidence semigroups need an acyclic quiver")
        return _incidence_table(Q)
    raise EffdimError(f"unknown kind {kind!r}")


@dataclass
class QuiverRep:
    """Vertex spaces with one map per edge, from target space to source space."""

    quiver: Quiver
    dimension_vector: list
    edge_maps: list

    def __post_init__(self):
        dims = self.dimension_vector
        if len(dims) != len(self.quiver.vertices):
            raise EffdimError("one dimension per vertex")
        if len(self.edge_maps) != len(self.quiver.edges):
            raise EffdimError("one map per edge")
        for (s, t, label), m in zip(self.quiver.edges, self.edge_maps):
            if (m.rows, m.cols) != (dims[s], dims[t]):
                raise EffdimError(
                    f"map for edge {label} must be {dims[s]}x{dims[t]}"
                )


def _rho(qrep, field, p):
    src, es = p
    acc = Matrix.identity(field, qrep.dimension_vector[src])
    for i in es:
        acc = acc.mul(qrep.edge_maps[i])
    return acc


def to_matrix_rep(qrep, field, kind, N=None):
    """Module on the block sum of vertex spaces, blocks in vertex order.

    A path acts by its composed edge maps in the (source, target) block and
    by zero elsewhere; the incidence kind requires coterminous paths to share
    one composed map.
    """
    for m in qrep.edge_maps:
        if m.field != field:
            raise EffdimError("edge maps over a different field")
    Q = qrep.quiver
    S = build(kind, Q, N)
    dims = qrep.dimension_vector
    total = sum(dims)
    offset = []
    at = 0
    for d in dims:
        offset.append(at)
        at += d
    cutoff = N if kind == "truncated" else None
    paths = _paths(Q, None if cutoff is None else cutoff - 1)

    def place(mat, x, y, rho):
        for a in range(rho.rows):
            row = mat.data[offset[x] + a]
            for b in range(rho.cols):
                row[offset[y] + b] = rho.data[a][b]

    mats = [Matrix.zeros(field, total, total) for _ in range(S.n)]
    if kind == "incidence":
        seen = {}
        pairs = _reachable_pairs(Q)
        idx = {p: i for i, p in enumerate(pairs)}
        for p in paths:
            key = (p[0], _endpoint(Q, p))
            rho = _rho(qrep, field, p)
            if key in seen:
                if seen[key] != rho:
                    raise EffdimError(
                        "edge maps give coterminous paths different images"
                    )
                continue
            seen[key] = rho
            place(mats[idx[key]], key[0], key[1], rho)
    else:
        for i, p in enumerate(paths):
            place(mats[i], p[0], _endpoint(Q, p), _rho(qrep, field, p))
    return MatrixRep(S, field, mats)


def generic_quiver_rep(kind, Q, field, seed, N=None):
    """Verified effective witness: sampled for path/truncated, natural for incidence."""
    n = len(Q.vertices)
    if kind == "incidence":
        if not Q.acyclic:
            raise NotAcyclicError("incidence semigroups need an acyclic quiver")
        maps = [Matrix.identity(field, 1) for _ in Q.edges]
        qrep = QuiverRep(Q, [1] * n, maps)
        rep = to_matrix_rep(qrep, field, kind)
        res = verify(rep)
        if not (res.is_homomorphism and res.is_effective):
            raise EffdimError("natural incidence module failed verification")
        return rep, GenericSample(field, seed, [], 0)
    if kind == "path":
        if not Q.acyclic:
            raise NotAcyclicError("path semigroups need an acyclic quiver")
        dims = [1] * n
    elif kind == "truncated":
        if N is None or N < 1:
            raise EffdimError("truncated path semigroups need N >= 1")
        dims = [N] * n
    else:
        raise EffdimError(f"unknown kind {kind!r}")

    rng = random.Random(seed)
    retries = 0
    while True:
        if kind == "path":
            if field.size is None:
                tup = [field.from_int(rng.randint(1, 10**6)) for _ in Q.edges]
            else:
                tup = [
                    field.from_code(1 + rng.randrange(field.size - 1))
                    for _ in Q.edges
                ]
            maps = [Matrix(field, [[c]]) for c in tup]
        else:
            tup = [_random_strict_upper(field, N, rng) for _ in Q.edges]
            maps = tup
        rep = to_matrix_rep(QuiverRep(Q, dims, maps), field, kind, N)
        res = verify(rep)
        if res.is_homomorphism and res.is_effective:
            return rep, GenericSample(field, seed, tup, retries)
        retries += 1
        if retries > _RETRY_CAP:
            size = "infinite" if field.size is None else str(field.size)
            raise RetriesExhaustedError(
                f"no effective sample in {_RETRY_CAP} resamples over a field "
                f"of size {size}; enlarge the field"
            )
