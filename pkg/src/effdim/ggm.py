"""Distinguished-ideal analysis: Rees coordinates and the ideal-driven exact rules.

A semigroup that acts effectively on both sides of a (0-)minimal ideal keeps
all of its injectivity information inside that ideal.  When the ideal's
maximal subgroup is trivial the 0/1 structure matrix alone decides the
dimension; otherwise the structure matrix must be one-sided invertible over
the rational group algebra and the group contributes a tensor factor.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    EffdimError,
    FieldMismatchError,
    NotAGGMError,
    NotGroupMappingError,
    StructureMatrixNotInvertibleError,
)
from .cayley import CayleyTable, derive_structure
from .fields import Rationals
from .linalg import Matrix, pivot_columns, rank_of, rank_solve
from .reps import MatrixRep, verify


@dataclass
class ReesStructure:
    """Coordinatization of the distinguished ideal as a Rees matrix semigroup.

    Nonzero ideal elements factor uniquely as r_i * g * q_lam with r_i the
    least element of R_i meeting L_e, q_lam the least element of L_lam
    meeting R_e, and g in the maximal subgroup at e.  structure_matrix[lam][i]
    holds q_lam * r_i as a local group index, or None for the zero.
    """

    ideal: tuple
    zero: Optional[int]
    e: int
    group: CayleyTable
    group_embed: tuple
    r_reps: tuple
    l_reps: tuple
    r_index: dict
    l_index: dict
    coords: dict
    structure_matrix: tuple


@dataclass
class GGMClass:
    kind: str  # "AGGM" | "GroupMapping" | "NotGGM"
    rees: Optional[ReesStructure]
    reason: Optional[dict]


@dataclass
class AggmResult:
    value: int
    witness: MatrixRep
    note: str


@dataclass
class GroupMappingResult:
    value: int
    witness: MatrixRep
    side: str
    class_count: int


def _action_collapse(S, members):
    """First pair of elements acting identically on the ideal, or None."""
    col = list(members)
    for side, rows in (("left", S.table[:, col]), ("right", S.table[col].T)):
        seen = {}
        for s in range(S.n):
            key = tuple(int(v) for v in rows[s])
            if key in seen:
                return side, (seen[key], s)
            seen[key] = s
    return None


def _rees_structure(S, greens, members):
    z = S.zero if (S.zero is not None and S.zero in members) else None
    body = [x for x in members if x != z]

    def class_list(ids):
        byc = {}
        for x in body:
            byc.setdefault(int(ids[x]), []).append(x)
        # body ascends, so each list leads with its least element
        return [byc[c] for c in sorted(byc, key=lambda c: byc[c][0])]

    r_classes = class_list(greens.r_class)
    l_classes = class_list(greens.l_class)
    r_index = {x: i for i, cls in enumerate(r_classes) for x in cls}
    l_index = {x: lam for lam, cls in enumerate(l_classes) for x in cls}

    idems = [x for x in body if S.mul(x, x) == x]
    if not idems:
        raise EffdimError("distinguished ideal has no nonzero idempotent")
    e = idems[0]
    group, embed = S.sub_table(greens.h_class_of(e))
    g_pos = {int(v): k for k, v in enumerate(embed)}

    e_r = greens.r_class[e]
    e_l = greens.l_class[e]
    r_reps = []
    for cls in r_classes:
        cand = [x for x in cls if greens.l_class[x] == e_l]
        if not cand:
            raise EffdimError("ideal is not completely (0-)simple")
        r_reps.append(cand[0])
    l_reps = []
    for cls in l_classes:
        cand = [x for x in cls if greens.r_class[x] == e_r]
        if not cand:
            raise EffdimError("ideal is not completely (0-)simple")
        l_reps.append(cand[0])

    P = []
    for q in l_reps:
        row = []
        for r in r_reps:
            v = S.mul(q, r)
            if z is not None and v == z:
                row.append(None)
            elif v in g_pos:
                row.append(g_pos[v])
            else:
                raise EffdimError("structure matrix entry escapes the subgroup")
        P.append(tuple(row))

    coords = {}
    for x in body:
        i = r_index[x]
        lam = l_index[x]
        hits = [
            h
            for h in range(group.n)
            if S.mul(S.mul(r_reps[i], int(embed[h])), l_reps[lam]) == x
        ]
        if len(hits) != 1:
            raise EffdimError("Rees coordinates are not unique")
        coords[x] = (i, hits[0], lam)

    # the table must follow (i,g,lam)(j,h,mu) = (i, g p_{lam,j} h, mu)
    for x in body:
        i, gx, _ = coords[x]
        for y in body:
            j, hy, mu = coords[y]
            p = P[coords[x][2]][j]
            v = S.mul(x, y)
            if p is None:
                ok = z is not None and v == z
            else:
                ok = coords.get(v) == (i, group.mul(gx, group.mul(p, hy)), mu)
            if not ok:
                raise EffdimError("ideal does not follow the Rees product rule")

    for row in P:
        if all(v is None for v in row):
            raise EffdimError("structure matrix has a zero row")
    for i in range(len(r_reps)):
        if all(P[lam][i] is None for lam in range(len(l_reps))):
            raise EffdimError("structure matrix has a zero column")

    return ReesStructure(
        ideal=tuple(members),
        zero=z,
        e=e,
        group=group,
        group_embed=tuple(int(v) for v in embed),
        r_reps=tuple(r_reps),
        l_reps=tuple(l_reps),
        r_index=r_index,
        l_index=l_index,
        coords=coords,
        structure_matrix=tuple(P),
    )


def classify_ggm(S):
    """Trichotomy AGGM / GroupMapping / NotGGM over the (0-)minimal ideals.

    A semigroup qualifies when it acts effectively on both sides of some
    (0-)minimal ideal; the kind then splits on whether the ideal's maximal
    subgroup is trivial.  NotGGM is a result, not an error, and carries a
    witness pair of elements acting identically on the candidate ideal.
    """
    if S.n <= 1:
        raise EffdimError("classification needs at least two elements")
    greens = derive_structure(S)
    if S.zero is not None:
        candidates = [tuple(int(x) for x in m) for m in greens.zero_minimal_ideals]
    else:
        candidates = [tuple(int(x) for x in greens.minimal_ideal)]
    reason = None
    for members in candidates:
        fail = _action_collapse(S, members)
        if fail is not None:
            if reason is None:
                side, pair = fail
                reason = {"ideal": members, "side": side, "pair": pair}
            continue
        rees = _rees_structure(S, greens, members)
        if rees.group.n == 1:
            if rees.zero is None:
                # a zeroless trivial-group ideal admits no two-sided
                # effective action once |S| > 1
                raise EffdimError("trivial-group ideal without zero cannot be effective")
            P = rees.structure_matrix
            if len(set(P)) != len(P) or len({tuple(c) for c in zip(*P)}) != len(P[0]):
                raise EffdimError("effective action forces distinct rows and columns")
            return GGMClass("AGGM", rees, None)
        return GGMClass("GroupMapping", rees, None)
    if reason is None:
        reason = {"ideal": None, "side": None, "pair": None}
    return GGMClass("NotGGM", None, reason)


def rees_to_json(rees):
    return {
        "group": rees.group.to_json(),
        "structure_matrix": [list(row) for row in rees.structure_matrix],
        "r_reps": list(rees.r_reps),
        "l_reps": list(rees.l_reps),
    }


def _r_class_image(S, rees, s, i):
    """Left action of s on R-class i: (new index, group multiplier) or None."""
    x = S.mul(s, rees.r_reps[i])
    if x == rees.zero:
        return None
    i2 = rees.r_index[x]
    r2 = rees.r_reps[i2]
    for h, y in enumerate(rees.group_embed):
        if S.mul(r2, y) == x:
            return i2, h
    raise EffdimError("left action escaped the coordinate system")


def aggm_effdim(S, field):
    """Exact dimension rank(P) for the trivial-subgroup case, with witness.

    The witness is the left action on R-class basis vectors (the zero kills,
    everything else permutes partially) quotiented by the kernel of the
    structure matrix P acting k^n -> k^m; its dimension equals rank(P) over
    the chosen field and the module embeds in every effective one.
    """
    cls = classify_ggm(S)
    if cls.kind != "AGGM":
        raise NotAGGMError(f"classified as {cls.kind}")
    rees = cls.rees
    P = Matrix.from_int_rows(
        field, [[0 if v is None else 1 for v in row] for row in rees.structure_matrix]
    )
    piv = pivot_columns(P)
    rank = len(piv)
    base = Matrix(field, [[row[c] for c in piv] for row in P.data])
    _, _, expand = rank_solve(base, P)
    mats = []
    for s in range(S.n):
        w = Matrix.zeros(field, rank, rank)
        for t, c in enumerate(piv):
            hit = _r_class_image(S, rees, s, c)
            if hit is None:
                continue
            i2 = hit[0]
            for r in range(rank):
                w.data[r][t] = expand.data[r][i2]
        mats.append(w)
    rep = MatrixRep(S, field, mats)
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("quotient action failed verification")
    return AggmResult(rank, rep, "occurs in every effective module over this field")


def _unfold_over_q(rees):
    """Structure matrix with each group entry expanded to a regular-rep block."""
    G = rees.group
    k = G.n
    m = len(rees.l_reps)
    n = len(rees.r_reps)
    rows = [[0] * (n * k) for _ in range(m * k)]
    for lam, prow in enumerate(rees.structure_matrix):
        for i, p in enumerate(prow):
            if p is None:
                continue
            for b in range(k):
                rows[lam * k + G.mul(p, b)][i * k + b] = 1
    return rows


def _tensor_witness(S, rees, field, g_module):
    """Left action on {r_i (x) v_j}: s.(r_i (x) v) = r_i' (x) h.v when s r_i = r_i' h."""
    n = len(rees.r_reps)
    dv = g_module.dim
    mats = []
    for s in range(S.n):
        w = Matrix.zeros(field, n * dv, n * dv)
        for i in range(n):
            hit = _r_class_image(S, rees, s, i)
            if hit is None:
                continue
            i2, h = hit
            block = g_module.image(h)
            for a in range(dv):
                for b in range(dv):
                    w.data[i2 * dv + a][i * dv + b] = block.data[a][b]
        mats.append(w)
    return MatrixRep(S, field, mats)


def _assert_effective(rep):
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("tensor witness failed verification")


def _check_group_module(field, group, g_effdim, g_module):
    if not np.array_equal(g_module.S.table, group.table):
        raise EffdimError("group module is not over the ideal's maximal subgroup")
    if g_module.field != field:
        raise FieldMismatchError("group module lives over a different field")
    if g_module.dim != g_effdim:
        raise EffdimError("group module dimension disagrees with the claimed value")
    chk = verify(g_module)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("group module must be an effective representation")


def group_mapping_effdim(S, field, g_effdim, g_module):
    """Exact dimension m * g_effdim when P is one-sided invertible over QG.

    g_module must be an effective g_effdim-dimensional representation of the
    ideal's maximal subgroup over the same field.  Left-invertibility of the
    structure matrix (full column rank of the Q-unfolding) pairs with the
    R-class count; the right case runs on the opposite table and transposes.
    A missing zero is adjoined for the Rees presentation and stripped from
    the witness.
    """
    cls = classify_ggm(S)
    if cls.kind != "GroupMapping":
        raise NotGroupMappingError(f"classified as {cls.kind}")
    rees = cls.rees
    _check_group_module(field, rees.group, g_effdim, g_module)
    if rees.zero is None:
        inner = group_mapping_effdim(S.adjoin_zero(), field, g_effdim, g_module)
        rep = MatrixRep(S, field, inner.witness.mats[: S.n])
        _assert_effective(rep)
        return GroupMappingResult(inner.value, rep, inner.side, inner.class_count)
    k = rees.group.n
    n = len(rees.r_reps)
    m = len(rees.l_reps)
    rank = rank_of(Matrix.from_int_rows(Rationals(), _unfold_over_q(rees)))
    if rank == n * k:
        wit = _tensor_witness(S, rees, field, g_module)
        _assert_effective(wit)
        return GroupMappingResult(n * g_effdim, wit, "left", n)
    if rank == m * k:
        T = S.opposite()
        tcls = classify_ggm(T)
        if tcls.kind != "GroupMapping":
            raise EffdimError("opposite table lost the group-mapping structure")
        op_module = MatrixRep(
            tcls.rees.group,
            field,
            [g_module.image(h).transpose() for h in range(k)],
        )
        wit_t = _tensor_witness(T, tcls.rees, field, op_module)
        rep = MatrixRep(S, field, [w.transpose() for w in wit_t.mats])
        _assert_effective(rep)
        return GroupMappingResult(m * g_effdim, rep, "right", m)
    raise StructureMatrixNotInvertibleError(
        f"unfolded structure matrix has rank {rank}, needs {n * k} or {m * k}"
    )
