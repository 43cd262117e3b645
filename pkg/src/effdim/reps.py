"""Matrix representations: construction, verification, sums/tensors, the
tensor-power faithfulness bound and the regular/reduced-regular witnesses."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .cayley import derive_structure
from .errors import (
    ActionInconsistentError,
    EffdimError,
    FieldMismatchError,
    HypothesisFailedError,
    NotEffectiveError,
    NotGeneratingError,
)
from .fields import Rationals, field_tables, field_to_json
from .linalg import Matrix, block_diag, rank_of

# witness prime for integer ranks: full rank mod p certifies full rank over Q
_RANK_PRIME = 2147483647
_INT64_SAFE = 2**62


class _NotReached:
    def __repr__(self):
        return "NotReached"


# returned by steinberg_bound when no k <= k_max suffices
NotReached = _NotReached()


class MatrixRep:
    """Images of every semigroup element as d x d matrices over one field."""

    __slots__ = ("S", "field", "dim", "mats")

    def __init__(self, S, field, mats):
        if len(mats) != S.n:
            raise EffdimError(f"need {S.n} images, got {len(mats)}")
        dims = {(m.rows, m.cols) for m in mats}
        if len(dims) > 1 or (dims and min(dims)[0] != min(dims)[1]):
            raise EffdimError(f"images must share one square shape, got {dims}")
        for m in mats:
            if m.field != field:
                raise FieldMismatchError("image over a different field")
        self.S = S
        self.field = field
        self.dim = mats[0].rows if mats else 0
        self.mats = list(mats)

    def image(self, i):
        return self.mats[i]

    def __repr__(self):
        return f"MatrixRep(n={self.S.n}, dim={self.dim}, field={self.field!r})"


@dataclass(frozen=True)
class RepCheckResult:
    is_homomorphism: bool
    hom_witness: tuple | None
    is_effective: bool
    collapsed_pair: tuple | None
    is_faithful: bool
    annihilator_dim: int


def _finite_codes(rep):
    """(n, d, d) int64 code array for small finite fields, else None."""
    f = rep.field
    if getattr(f, "size", None) is None or f.size > 4096:
        return None
    n, d = rep.S.n, rep.dim
    out = np.empty((n, d, d), np.int64)
    for s, m in enumerate(rep.mats):
        for i in range(d):
            row = m.data[i]
            for j in range(d):
                out[s, i, j] = f.to_code(row[j])
    return out


def _int_entries(rep, bound=2**31):
    """(n, d, d) int64 array when all entries are smallish integers, else None."""
    if not isinstance(rep.field, Rationals):
        return None
    n, d = rep.S.n, rep.dim
    out = np.empty((n, d, d), np.int64)
    for s, m in enumerate(rep.mats):
        for i in range(d):
            for j, v in enumerate(m.data[i]):
                if v.denominator != 1 or abs(v.numerator) >= bound:
                    return None
                out[s, i, j] = v.numerator
    return out


def _flat_rows(rep, with_identity):
    rows = [m.flat() for m in rep.mats]
    if with_identity:
        rows.append(Matrix.identity(rep.field, rep.dim).flat())
    return rows


def _int_rank_exact(rows):
    """Exact rank over Q of integer rows; mod-p certificate with exact fallback."""
    arr = np.array(rows, dtype=np.int64)
    if arr.size == 0:
        return 0
    r = int(kernels.modp_rank(arr, _RANK_PRIME))
    if r == min(arr.shape):
        return r
    m = Matrix(Rationals(), [[Fraction(int(v)) for v in row] for row in rows])
    return rank_of(m)


def _collapsed_pair(rep):
    seen = {}
    for s, m in enumerate(rep.mats):
        key = tuple(m.flat())
        if key in seen:
            return seen[key], s
        seen[key] = s
    return None


def verify(rep):
    """Full check: homomorphism (unital for monoids), effectiveness, faithfulness."""
    S, f, d = rep.S, rep.field, rep.dim
    codes = _finite_codes(rep)
    ints = None

    witness = None
    hom_ok = True
    if codes is not None:
        add_t, mul_t, _, _ = field_tables(f)
        a, b = kernels.hom_witness_ffield(S.table, codes, add_t, mul_t)
        if a >= 0:
            hom_ok, witness = False, (int(a), int(b))
    else:
        ints = _int_entries(rep, bound=2**30 // max(1, d))
        if ints is not None:
            a, b = kernels.hom_witness_int(S.table, ints)
            if a >= 0:
                hom_ok, witness = False, (int(a), int(b))
        else:
            for a in range(S.n):
                for b in range(S.n):
                    if rep.mats[a].mul(rep.mats[b]) != rep.mats[S.mul(a, b)]:
                        hom_ok, witness = False, (a, b)
                        break
                if not hom_ok:
                    break
    if hom_ok and S.is_monoid() and rep.mats[S.identity] != Matrix.identity(f, d):
        # multiplicative but not unital; monoid images must be unital maps
        hom_ok, witness = False, None

    collapsed = _collapsed_pair(rep)

    full = S.n + (0 if S.is_monoid() else 1)
    if codes is not None:
        rows = codes.reshape(S.n, d * d)
        if not S.is_monoid():
            eye = np.array(
                [f.to_code(v) for v in Matrix.identity(f, d).flat()], np.int64
            )
            rows = np.vstack([rows, eye[None, :]])
        add_t, mul_t, inv_t, neg_t = field_tables(f)
        rank = int(kernels.ffield_rank(rows, add_t, mul_t, inv_t, neg_t))
    else:
        rows = _flat_rows(rep, with_identity=not S.is_monoid())
        rank = _rows_rank(f, rows)
    ann = full - rank

    return RepCheckResult(
        is_homomorphism=hom_ok,
        hom_witness=witness,
        is_effective=collapsed is None,
        collapsed_pair=collapsed,
        is_faithful=hom_ok and ann == 0,
        annihilator_dim=ann,
    )


def extend_from_generators(S, gens, images):
    """Breadth-first factorization of S over gens; consistency is not checked."""
    gens = list(gens)
    if len(gens) != len(images):
        raise EffdimError("one image matrix per generator")
    if not images:
        raise NotGeneratingError("no generators given")
    f = images[0].field
    mats = {}
    for g, m in zip(gens, images):
        mats[g] = m
    queue = list(mats)
    at = 0
    while at < len(queue):
        x = queue[at]
        at += 1
        for g in gens:
            y = S.mul(x, g)
            if y not in mats:
                mats[y] = mats[x].mul(mats[g])
                queue.append(y)
    if len(mats) != S.n:
        missing = sorted(set(range(S.n)) - set(mats))
        raise NotGeneratingError(f"generators miss elements {missing[:8]}")
    return MatrixRep(S, f, [mats[i] for i in range(S.n)])


def combine(op, a, b):
    """Direct sum or tensor product of two representations of one semigroup."""
    if a.field != b.field:
        raise FieldMismatchError("combine needs one common field")
    if a.S is not b.S and not np.array_equal(a.S.table, b.S.table):
        raise EffdimError("combine needs representations of the same semigroup")
    if op == "direct_sum":
        mats = [block_diag(a.field, [x, y]) for x, y in zip(a.mats, b.mats)]
    elif op == "tensor":
        mats = [x.kron(y) for x, y in zip(a.mats, b.mats)]
    else:
        raise EffdimError(f"unknown combine op {op!r}")
    return MatrixRep(a.S, a.field, mats)


def steinberg_bound(rep, k_max=None):
    """Least k with ann(+_{t=0..k} V^tensor-t) = 0; V^0 is the trivial module.

    Tensor powers of a non-effective module stay non-effective, so the input
    must be effective.  Returns NotReached when k_max is exceeded.
    """
    S, f, d = rep.S, rep.field, rep.dim
    res = verify(rep)
    if not res.is_homomorphism:
        raise EffdimError(f"not a homomorphism at pair {res.hom_witness}")
    if not res.is_effective:
        raise NotEffectiveError(*res.collapsed_pair)
    if k_max is None:
        k_max = S.n + (0 if S.is_monoid() else 1)

    full = S.n + (0 if S.is_monoid() else 1)
    one = f.one
    # rows[s] accumulates flat(V^0(s)) ++ flat(V^1(s)) ++ ...
    rows = [[one] for _ in range(S.n)]
    if not S.is_monoid():
        rows.append([one])
    power = None
    for k in range(0, k_max + 1):
        if k > 0:
            power = rep if power is None else combine("tensor", power, rep)
            for s in range(S.n):
                rows[s].extend(power.mats[s].flat())
            if not S.is_monoid():
                rows[-1].extend(Matrix.identity(f, power.dim).flat())
        if _rows_rank(f, rows) == full:
            return k
    return NotReached


def _rows_rank(f, rows):
    if getattr(f, "size", None) is not None and f.size <= 4096:
        arr = np.array([[f.to_code(v) for v in row] for row in rows], np.int64)
        add_t, mul_t, inv_t, neg_t = field_tables(f)
        return int(kernels.ffield_rank(arr, add_t, mul_t, inv_t, neg_t))
    if isinstance(f, Rationals) and all(
        v.denominator == 1 and abs(v.numerator) < _INT64_SAFE
        for row in rows
        for v in row
    ):
        return _int_rank_exact([[v.numerator for v in row] for row in rows])
    return rank_of(Matrix(f, rows))


def regular_reps(S, field):
    """Left regular representation on S-dot plus the dim |S-dot|-1 reduction.

    When the minimal ideal I of S-dot is a group the reduction quotients by
    the span of sum(h for h in I), which needs char not dividing |I|;
    otherwise it is the coordinate quotient k[S-dot]/k[S-dot]e for an
    idempotent e in I, built on the side where I has at least two L-classes.
    """
    M = S.monoid_completion()
    N = M.n
    monoid_is_s = M is S

    def lift(mats):
        # images for the elements of S (drop the adjoined identity if any)
        return MatrixRep(S, field, mats[: S.n])

    full_mats = []
    for s in range(N):
        m = Matrix.zeros(field, N, N)
        for t in range(N):
            m.data[M.mul(s, t)][t] = field.one
        full_mats.append(m)
    full = lift(full_mats)

    g = derive_structure(M)
    ideal = [int(x) for x in g.minimal_ideal]
    l_classes = {int(g.l_class[x]) for x in ideal}
    r_classes = {int(g.r_class[x]) for x in ideal}
    is_group = len(l_classes) == 1 and len(r_classes) == 1

    if is_group:
        if field.char and len(ideal) % field.char == 0:
            raise HypothesisFailedError(
                f"minimal ideal is a group of order {len(ideal)} killed by "
                f"characteristic {field.char}"
            )
        h0 = ideal[-1]
        keep = [t for t in range(N) if t != h0]
        pos = {t: i for i, t in enumerate(keep)}
        red_mats = []
        for s in range(N):
            m = Matrix.zeros(field, N - 1, N - 1)
            for t in keep:
                st = M.mul(s, t)
                if st != h0:
                    m.data[pos[st]][pos[t]] = field.add(
                        m.data[pos[st]][pos[t]], field.one
                    )
                else:
                    for h in ideal:
                        if h != h0:
                            m.data[pos[h]][pos[t]] = field.sub(
                                m.data[pos[h]][pos[t]], field.one
                            )
            red_mats.append(m)
        reduced = lift(red_mats)
    else:
        if len(l_classes) >= 2:
            side, transpose = M, False
        else:
            side, transpose = M.opposite(), True
        gs = derive_structure(side)
        idem = [
            int(e) for e in gs.idempotents if int(e) in set(int(x) for x in gs.minimal_ideal)
        ]
        e = min(idem)
        left_ideal = {side.mul(t, e) for t in range(N)}
        keep = [t for t in range(N) if t not in left_ideal]
        pos = {t: i for i, t in enumerate(keep)}
        red_mats = []
        for s in range(N):
            m = Matrix.zeros(field, len(keep), len(keep))
            for t in keep:
                st = side.mul(s, t)
                if st in pos:
                    m.data[pos[st]][pos[t]] = field.one
            red_mats.append(m)
        if transpose:
            red_mats = [m.transpose() for m in red_mats]
        reduced = lift(red_mats)

    for rep in (full, reduced):
        if _collapsed_pair(rep) is not None:
            raise EffdimError("regular construction produced a collapsed pair")
    return full, reduced


def linearize_partial_action(S, points, action, field):
    """0/1 matrices of a left action of S by partial maps on {0..points-1}.

    action[s][j] is the image of point j under element s, or None.  Column j
    of the matrix of s carries a single 1 in that row.  The maps must compose
    according to the Cayley table.
    """
    if len(action) != S.n:
        raise ActionInconsistentError(f"need {S.n} partial maps, got {len(action)}")
    for s in range(S.n):
        if len(action[s]) != points:
            raise ActionInconsistentError(f"element {s}: expected {points} entries")
        for v in action[s]:
            if v is not None and not (0 <= v < points):
                raise ActionInconsistentError(f"element {s}: point {v} out of range")
    for a in range(S.n):
        fa = action[a]
        for b in range(S.n):
            fb = action[b]
            fc = action[S.mul(a, b)]
            for j in range(points):
                v = fb[j]
                w = fa[v] if v is not None else None
                if w != fc[j]:
                    raise ActionInconsistentError(
                        f"composite of {a} after {b} disagrees at point {j}"
                    )
    mats = []
    for s in range(S.n):
        m = Matrix.zeros(field, points, points)
        for j, v in enumerate(action[s]):
            if v is not None:
                m.data[v][j] = field.one
        mats.append(m)
    return MatrixRep(S, field, mats)


def rep_to_json(rep):
    f = rep.field
    from .fields import scalar_to_json

    return {
        "semigroup_hash": rep.S.hash_hex(),
        "field": field_to_json(f),
        "dim": rep.dim,
        "images": {
            str(s): [[scalar_to_json(f, v) for v in row] for row in m.data]
            for s, m in enumerate(rep.mats)
        },
    }


def rep_from_json(obj, S, field=None):
    from .fields import field_from_json, scalar_from_json

    if obj["semigroup_hash"] != S.hash_hex():
        raise EffdimError("representation JSON belongs to a different table")
    f = field if field is not None else field_from_json(obj["field"])
    d = obj["dim"]
    mats = []
    for s in range(S.n):
        entries = obj["images"][str(s)]
        m = Matrix(f, [[scalar_from_json(f, v) for v in row] for row in entries])
        if (m.rows, m.cols) != (d, d):
            raise EffdimError(f"image {s} is not {d}x{d}")
        mats.append(m)
    return MatrixRep(S, f, mats)
