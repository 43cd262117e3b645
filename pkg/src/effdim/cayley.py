"""Finite semigroups as Cayley tables, and the structure theory on top of them.

Elements are dense 0-based indices; table[a][b] is the product ab with the
row the left factor.  Everything downstream (Green's relations, chains,
classification flags) is computed from the raw table here.
"""

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import NotAssociativeError, TableFormatError, NotGeneratingError, EffdimError


class CayleyTable:
    """Validated multiplication table of a finite semigroup."""

    __slots__ = ("table", "names", "identity", "zero")

    def __init__(self, table, names=None, identity=None, zero=None):
        self.table = table
        self.names = names
        self.identity = identity
        self.zero = zero

    @property
    def n(self):
        return self.table.shape[0]

    def mul(self, a, b):
        return int(self.table[a, b])

    def is_monoid(self):
        return self.identity is not None

    def name_of(self, i):
        return self.names[i] if self.names else str(i)

    def hash_hex(self):
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.ascontiguousarray(self.table, dtype=np.int64).tobytes())
        return h.hexdigest()

    def opposite(self):
        return CayleyTable(
            np.ascontiguousarray(self.table.T), self.names, self.identity, self.zero
        )

    def adjoin_identity(self):
        """S^1: a fresh identity appended as the last element, always."""
        n = self.n
        t = np.empty((n + 1, n + 1), np.int64)
        t[:n, :n] = self.table
        t[n, : n + 1] = np.arange(n + 1)
        t[: n + 1, n] = np.arange(n + 1)
        names = self.names + ["1"] if self.names else None
        return CayleyTable(t, names, identity=n, zero=self.zero)

    def monoid_completion(self):
        """S-dot: S itself when S is a monoid, else S^1."""
        return self if self.identity is not None else self.adjoin_identity()

    def adjoin_zero(self):
        """S^0: a fresh absorbing element appended as the last element, always."""
        n = self.n
        t = np.full((n + 1, n + 1), n, np.int64)
        t[:n, :n] = self.table
        names = self.names + ["0"] if self.names else None
        return CayleyTable(t, names, identity=self.identity, zero=n)

    def sub_table(self, indices):
        """Restriction to a product-closed subset, with the index embedding."""
        idx = np.asarray(sorted(indices), np.int64)
        pos = -np.ones(self.n, np.int64)
        pos[idx] = np.arange(len(idx))
        sub = pos[self.table[np.ix_(idx, idx)]]
        if (sub < 0).any():
            raise EffdimError("subset is not closed under products")
        names = [self.name_of(i) for i in idx] if self.names else None
        return validate(sub, names=names), idx

    def to_json(self):
        obj = {"n": self.n, "table": self.table.tolist()}
        if self.names:
            obj["names"] = list(self.names)
        return obj

    def to_cay(self):
        lines = [f"# cayley table, n={self.n}", str(self.n)]
        for row in self.table:
            lines.append(" ".join(str(int(v)) for v in row))
        if self.names:
            lines.append("names: " + " ".join(self.names))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"CayleyTable(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and np.array_equal(self.table, other.table)


def validate(raw, names=None):
    """Check shape, entry range and associativity; detect identity and zero."""
    try:
        table = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise TableFormatError(f"table is not a square integer array: {exc}") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise TableFormatError(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise TableFormatError("empty table")
    if table.min() < 0 or table.max() >= n:
        bad = np.unravel_index(
            int(np.argmax((table < 0) | (table >= n))), table.shape
        )
        raise TableFormatError(
            f"index out of range at {bad}: {int(table[bad])} not in [0, {n})"
        )
    a, b, c = kernels.assoc_witness(table)
    if a >= 0:
        raise NotAssociativeError(int(a), int(b), int(c))
    if names is not None and len(names) != n:
        raise TableFormatError(f"expected {n} names, got {len(names)}")

    rng = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(table[e], rng) and np.array_equal(table[:, e], rng):
            identity = e
            break
    zero = None
    for z in range(n):
        if (table[z] == z).all() and (table[:, z] == z).all():
            zero = z
            break
    table.setflags(write=False)
    return CayleyTable(table, names, identity, zero)


def from_cay(text):
    """Parse the .cay text format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise TableFormatError("no data lines in .cay input")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableFormatError(f"first data line must be n, got {lines[0]!r}") from None
    if len(lines) < n + 1:
        raise TableFormatError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1 : n + 1]:
        try:
            row = [int(v) for v in ln.split()]
        except ValueError:
            raise TableFormatError(f"non-integer table row: {ln!r}") from None
        if len(row) != n:
            raise TableFormatError(f"expected {n} entries per row, got {len(row)}")
        rows.append(row)
    names = None
    for ln in lines[n + 1 :]:
        if ln.startswith("names:"):
            names = ln[len("names:") :].split()
    return validate(rows, names=names)


def from_json_obj(obj):
    return validate(obj["table"], names=obj.get("names"))


def load(path):
    """Load a table from a .cay or .json file by extension."""
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return from_json_obj(json.loads(text))
    return from_cay(text)


def adjoin_variants(S):
    """(S^1, S-dot, S^op) per the elementary reductions."""
    return S.adjoin_identity(), S.monoid_completion(), S.opposite()


def _partition_ids(bitmap):
    """Group equal rows of a boolean matrix; ids ordered by first occurrence."""
    n = bitmap.shape[0]
    seen = {}
    ids = np.empty(n, np.int64)
    for i in range(n):
        key = bitmap[i].tobytes()
        if key not in seen:
            seen[key] = len(seen)
        ids[i] = seen[key]
    return ids, len(seen)


def _pair_ids(a_ids, b_ids):
    seen = {}
    ids = np.empty(len(a_ids), np.int64)
    for i, key in enumerate(zip(a_ids.tolist(), b_ids.tolist())):
        if key not in seen:
            seen[key] = len(seen)
        ids[i] = seen[key]
    return ids, len(seen)


class GreensData:
    """Green's relations package: partitions, J-order, regularity, subgroups."""

    __slots__ = (
        "S",
        "r_class",
        "l_class",
        "j_class",
        "h_class",
        "num_r",
        "num_l",
        "num_j",
        "num_h",
        "j_leq",
        "regular",
        "idempotents",
        "minimal_ideal",
        "zero_minimal_ideals",
        "maximal_subgroups",
    )

    def classes(self, ids, num):
        out = [[] for _ in range(num)]
        for i, c in enumerate(ids.tolist()):
            out[c].append(i)
        return out

    def r_classes(self):
        return self.classes(self.r_class, self.num_r)

    def l_classes(self):
        return self.classes(self.l_class, self.num_l)

    def j_classes(self):
        return self.classes(self.j_class, self.num_j)

    def h_class_of(self, e):
        return [i for i in range(self.S.n) if self.h_class[i] == self.h_class[e]]


def derive_structure(S):
    """All Green's data for S: partitions, J-order, regularity, ideals, subgroups."""
    table = S.table
    n = S.n
    R, L, J = kernels.reach_bitmaps(table)
    g = GreensData()
    g.S = S
    g.r_class, g.num_r = _partition_ids(R)
    g.l_class, g.num_l = _partition_ids(L)
    g.j_class, g.num_j = _partition_ids(J)
    g.h_class, g.num_h = _pair_ids(g.r_class, g.l_class)

    reps = [0] * g.num_j
    for i in range(n - 1, -1, -1):
        reps[g.j_class[i]] = i
    # J_a <= J_b iff a's principal ideal sits inside b's, iff rep_a in ideal(rep_b)
    g.j_leq = np.zeros((g.num_j, g.num_j), bool)
    for a in range(g.num_j):
        for b in range(g.num_j):
            g.j_leq[a, b] = J[reps[b], reps[a]]

    g.idempotents = np.nonzero(np.diagonal(table) == np.arange(n))[0]
    g.regular = np.zeros(g.num_j, bool)
    for e in g.idempotents:
        g.regular[g.j_class[e]] = True

    strictly_below = g.j_leq & ~np.eye(g.num_j, dtype=bool)
    minimal_classes = [c for c in range(g.num_j) if not strictly_below[:, c].any()]
    if len(minimal_classes) != 1:
        raise EffdimError("finite semigroup must have a unique minimal J-class")
    g.minimal_ideal = np.nonzero(g.j_class == minimal_classes[0])[0]

    g.zero_minimal_ideals = []
    if S.zero is not None and n > 1:
        zc = g.j_class[S.zero]
        for c in range(g.num_j):
            if c == zc:
                continue
            below = np.nonzero(strictly_below[:, c])[0]
            if len(below) == 1 and below[0] == zc:
                members = np.nonzero(g.j_class == c)[0]
                g.zero_minimal_ideals.append(
                    np.sort(np.append(members, S.zero))
                )

    g.maximal_subgroups = {}
    for j in range(g.num_j):
        if not g.regular[j]:
            continue
        e = min(int(x) for x in g.idempotents if g.j_class[x] == j)
        members = [i for i in range(n) if g.h_class[i] == g.h_class[e]]
        sub, embed = S.sub_table(members)
        g.maximal_subgroups[j] = (sub, embed)
    return g


def maximal_subgroup(S, e):
    """H_e at an idempotent e as a group table plus embedding."""
    if S.mul(e, e) != e:
        raise EffdimError(f"element {e} is not idempotent")
    g = derive_structure(S)
    members = g.h_class_of(e)
    return S.sub_table(members)


def _longest_chain(leq_strict):
    k = leq_strict.shape[0]
    depth = [-1] * k
    order = sorted(range(k), key=lambda c: int(leq_strict[:, c].sum()))
    for c in order:
        below = np.nonzero(leq_strict[:, c])[0]
        depth[c] = 1 + max((depth[b] for b in below), default=-1)
    return max(depth, default=0)


def chain_lengths(S, greens=None):
    """(longest idempotent chain, longest regular-J chain), both as lengths.

    The two are equal on every semigroup; both are computed independently.
    """
    g = greens if greens is not None else derive_structure(S)
    idem = g.idempotents
    k = len(idem)
    table = S.table
    leq = np.zeros((k, k), bool)
    for a in range(k):
        for b in range(k):
            e, f = idem[a], idem[b]
            leq[a, b] = table[e, f] == e and table[f, e] == e
    idem_chain = _longest_chain(leq & ~np.eye(k, dtype=bool))

    reg = np.nonzero(g.regular)[0]
    sub = g.j_leq[np.ix_(reg, reg)]
    reg_chain = _longest_chain(sub & ~np.eye(len(reg), dtype=bool))
    return idem_chain, reg_chain


@dataclass(frozen=True)
class IndexPeriod:
    index: int
    period: int


def index_period(S, s):
    """Index m and period r of <s>: s^{m+r} = s^m with m+r-1 distinct powers."""
    table = S.table
    seen = {s: 1}
    cur = s
    t = 1
    while True:
        cur = int(table[cur, s])
        t += 1
        if cur in seen:
            m = seen[cur]
            return IndexPeriod(index=m, period=t - m)
        seen[cur] = t


def cyclic_subsemigroup(S, s):
    """The powers of s in order s, s^2, ..., s^{m+r-1}."""
    ip = index_period(S, s)
    out = [s]
    cur = s
    for _ in range(ip.index + ip.period - 2):
        cur = int(S.table[cur, s])
        out.append(cur)
    return out, ip


@dataclass(frozen=True)
class BasicFlags:
    is_monoid: bool
    is_group: bool
    is_commutative: bool
    is_band: bool
    is_inverse: bool
    is_left_regular_band: bool
    is_nilpotent: bool
    nilpotency_index: int | None
    has_zero: bool
    identity: int | None
    zero: int | None


def classify_basic(S):
    table = S.table
    n = S.n
    rng = np.arange(n)
    is_monoid = S.identity is not None
    is_comm = bool(np.array_equal(table, table.T))
    is_band = bool((np.diagonal(table) == rng).all())

    is_group = False
    if is_monoid:
        rows_perm = all(len(np.unique(table[i])) == n for i in range(n))
        cols_perm = all(len(np.unique(table[:, i])) == n for i in range(n))
        is_group = rows_perm and cols_perm

    # xyx per pair, vectorized: entry (x, y) = (xy)x
    xyx = table[table, rng[:, None]]
    c1 = xyx == rng[:, None]  # c1[x, y]: xyx = x
    inv_counts = (c1 & c1.T).sum(axis=1)
    is_inverse = bool((inv_counts == 1).all())
    is_lrb = bool((xyx == table).all())

    has_zero = S.zero is not None
    is_nilp = False
    nilp_index = None
    if has_zero:
        cur = np.ones(n, bool)
        k = 1
        while k <= n + 1:
            live = np.nonzero(cur)[0]
            if len(live) == 1 and live[0] == S.zero:
                is_nilp = True
                nilp_index = k
                break
            nxt = np.zeros(n, bool)
            nxt[table[np.ix_(live, rng)].ravel()] = True
            if np.array_equal(nxt, cur):
                break
            cur = nxt
            k += 1
    return BasicFlags(
        is_monoid=is_monoid,
        is_group=is_group,
        is_commutative=is_comm,
        is_band=is_band,
        is_inverse=is_inverse,
        is_left_regular_band=is_lrb,
        is_nilpotent=is_nilp,
        nilpotency_index=nilp_index,
        has_zero=has_zero,
        identity=S.identity,
        zero=S.zero,
    )


def generated_closure(S, X, as_monoid=False):
    """Elements of the least sub(semigroup|monoid) containing X, sorted."""
    seed = np.zeros(S.n, bool)
    for x in X:
        if not (0 <= x < S.n):
            raise TableFormatError(f"element {x} out of range")
        seed[x] = True
    if as_monoid:
        if S.identity is None:
            raise EffdimError("monoid closure requested but no identity present")
        seed[S.identity] = True
    mask = kernels.closure_mask(S.table, seed)
    return [int(i) for i in np.nonzero(mask)[0]]


def greedy_generators(S):
    """Small generating set, greedily by closure gain; identity excluded for monoids."""
    n = S.n
    mask = np.zeros(n, bool)
    if S.identity is not None:
        mask[S.identity] = True
        base = kernels.closure_mask(S.table, mask)
    else:
        base = mask
    gens = []
    cur = base.copy()
    while not cur.all():
        best, best_gain = None, -1
        for x in range(n):
            if cur[x]:
                continue
            trial = cur.copy()
            trial[x] = True
            gain = int(kernels.closure_mask(S.table, trial).sum())
            if gain > best_gain:
                best, best_gain = x, gain
        gens.append(best)
        cur[best] = True
        cur = kernels.closure_mask(S.table, cur)
    return gens


def verify_generates(S, gens, as_monoid=False):
    got = generated_closure(S, gens, as_monoid=as_monoid)
    if len(got) != S.n:
        missing = sorted(set(range(S.n)) - set(got))
        raise NotGeneratingError(f"generators miss elements {missing[:8]}")


def _joint_refine(tA, tB, ca, cb):
    # refine both colorings with one shared signature dictionary so that
    # color ids mean the same thing on both sides
    n = tA.shape[0]
    while True:
        key = {}

        def step(table, colors):
            new = [0] * n
            for x in range(n):
                sig = (
                    colors[x],
                    tuple(
                        sorted(
                            (colors[y], colors[table[x, y]], colors[table[y, x]])
                            for y in range(n)
                        )
                    ),
                )
                new[x] = key.setdefault(sig, len(key))
            return new

        na, nb = step(tA, ca), step(tB, cb)
        if len(set(na)) == len(set(ca)):
            return na, nb
        ca, cb = na, nb


def tables_isomorphic(A, B):
    """Backtracking isomorphism test for small tables (used by duality checks)."""
    if A.n != B.n:
        return False
    n = A.n

    shared = {}

    def initial(S):
        cols = []
        for x in range(n):
            ip = index_period(S, x)
            cols.append((ip.index, ip.period, int(S.table[x, x] == x)))
        return [shared.setdefault(c, len(shared)) for c in cols]

    ca, cb = _joint_refine(A.table, B.table, initial(A), initial(B))
    if sorted(ca) != sorted(cb):
        return False
    candidates = [[y for y in range(n) if cb[y] == ca[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: len(candidates[x]))
    image = [-1] * n
    used = [False] * n

    def fits(x, y):
        for x2 in order:
            y2 = image[x2]
            if y2 < 0:
                continue
            if image[A.table[x, x2]] >= 0 and B.table[y, y2] != image[A.table[x, x2]]:
                return False
            if image[A.table[x2, x]] >= 0 and B.table[y2, y] != image[A.table[x2, x]]:
                return False
        return True

    def place(k):
        if k == n:
            for x in range(n):
                for y in range(n):
                    if image[A.table[x, y]] != B.table[image[x], image[y]]:
                        return False
            return True
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            image[x] = y
            used[y] = True
            if fits(x, y) and place(k + 1):
                return True
            image[x] = -1
            used[y] = False
        return False

    return place(0)
