"""Band rules: support lattice, sign-sequence actions, faces, free LRB, rectangles.

A left regular band monoid satisfies xyx = xy; its principal left ideals form
a lattice under intersection and the support map onto that lattice drives the
lower bound.  Sign vectors over {+,-,0} multiply coordinatewise with 0 as the
identity and +,- as left zeros; their partial action on points linearizes to
the effective representations used as witnesses throughout.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .errors import (
    EffdimError,
    FieldTooSmallError,
    NotClosedError,
    NotLRBError,
    TableFormatError,
    TooLargeError,
)
from .cayley import CayleyTable, validate
from .duality import effdim_comm_inverse
from .linalg import Matrix
from .reps import MatrixRep, verify

_SIGN_CHARS = {0: "0", 1: "+", -1: "-"}
_SIGN_VALUES = {"0": 0, "+": 1, "-": -1}
_LETTERS = "abcdefgh"


@dataclass
class SupportLattice:
    lattice: CayleyTable
    sigma: tuple


@dataclass
class FaceResult:
    value: int
    witness: MatrixRep


@dataclass
class FreeLrbResult:
    value: int
    witness: MatrixRep
    table: CayleyTable


@dataclass
class RectBandResult:
    value: int
    witness: MatrixRep


def _check_lrb_monoid(S):
    if not S.is_monoid():
        raise NotLRBError("expected a monoid")
    t = S.table
    for x in range(S.n):
        for y in range(S.n):
            xy = t[x, y]
            # with an identity, xyx = xy at y = 1 also forces idempotency
            if t[xy, x] != xy:
                raise NotLRBError(f"xyx != xy at ({x}, {y})")


def _check_lattice(L):
    n = L.n
    leq = [[L.mul(x, y) == x for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(n):
            ubs = [u for u in range(n) if leq[x][u] and leq[y][u]]
            least = [u for u in ubs if all(leq[u][v] for v in ubs)]
            if len(least) != 1:
                raise EffdimError("principal left ideals do not form a lattice")


def support_lattice(M):
    """Lambda(M): principal left ideals under intersection, with the support map.

    Classes are numbered in first-occurrence order, so for a lattice monoid
    sigma comes out as the identity and the lattice table equals the input.
    """
    _check_lrb_monoid(M)
    n = M.n
    ideals = [frozenset(int(M.table[x, a]) for x in range(n)) for a in range(n)]
    seen = {}
    sigma = []
    rep = []
    for a, ia in enumerate(ideals):
        if ia not in seen:
            seen[ia] = len(rep)
            rep.append(a)
        sigma.append(seen[ia])
    for a in range(n):
        for b in range(n):
            if ideals[a] & ideals[b] != ideals[M.mul(a, b)]:
                raise EffdimError("Ma intersect Mb differs from Mab")
    k = len(rep)
    table = [[sigma[M.mul(rep[ca], rep[cb])] for cb in range(k)] for ca in range(k)]
    lat = validate(table)
    _check_lattice(lat)
    return SupportLattice(lat, tuple(sigma))


def lrb_lower_bound(M):
    """Effective dimension of Lambda(M), plus one when M has no zero.

    Every effective module contains the composition factors forced by the
    lattice quotient; without a zero the trivial module is forced as well.
    """
    sl = support_lattice(M)
    cert = effdim_comm_inverse(sl.lattice)
    has_zero = any(
        all(M.mul(x, z) == z and M.mul(z, x) == z for x in range(M.n))
        for z in range(M.n)
    )
    value = cert["value"] + (0 if has_zero else 1)
    return {
        "rule": "lrb_support_lattice",
        "value": value,
        "lattice_size": sl.lattice.n,
        "join_irreducibles": cert["join_irreducibles"],
        "includes_trivial": not has_zero,
    }


def sign_monoid(n):
    """{+,-,0}^n as a table, elements in lexicographic (0, +, -) order."""
    els = list(product((0, 1, -1), repeat=n))
    idx = {e: i for i, e in enumerate(els)}
    table = [
        [idx[tuple(x if x != 0 else y for x, y in zip(a, b))] for b in els]
        for a in els
    ]
    names = ["".join(_SIGN_CHARS[v] for v in e) for e in els]
    return validate(table, names=names), els


def _face_matrix(field, alpha):
    """Row-style linearization of the right action: point 0 is a sink, point i
    follows coordinate i (fixed on 0, sent to the sink on +, dropped on -)."""
    h = len(alpha)
    m = Matrix.zeros(field, h + 1, h + 1)
    m.data[0][0] = field.one
    for x in range(1, h + 1):
        s = alpha[x - 1]
        if s == 0:
            m.data[x][x] = field.one
        elif s == 1:
            m.data[x][0] = field.one
    return m


def sign_power_rep(n, field):
    """Effective (n+1)-dimensional representation of the sign monoid {+,-,0}^n."""
    if n < 1:
        raise EffdimError("need at least one coordinate")
    S, els = sign_monoid(n)
    rep = MatrixRep(S, field, [_face_matrix(field, a) for a in els])
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("sign action failed verification")
    return rep


def hyperplane_effdim(faces, field):
    """|H| + 1 for an abstract face semigroup given by its sign vectors.

    The face set must be closed under the sign product and contain the all-0
    identity; the witness restricts the sign power representation to it.
    """
    fl = sorted(set(tuple(f) for f in faces))
    if not fl:
        raise NotClosedError("empty face set")
    h = len(fl[0])
    if any(len(f) != h for f in fl):
        raise NotClosedError("sign vectors have mixed lengths")
    if any(v not in (-1, 0, 1) for f in fl for v in f):
        raise NotClosedError("sign vectors must be over {+, -, 0}")
    pos = {f: i for i, f in enumerate(fl)}
    if (0,) * h not in pos:
        raise NotClosedError("face set must contain the all-zero identity")
    table = [[0] * len(fl) for _ in fl]
    for i, a in enumerate(fl):
        for j, b in enumerate(fl):
            c = tuple(x if x != 0 else y for x, y in zip(a, b))
            if c not in pos:
                raise NotClosedError(f"product of faces {i} and {j} is not a face")
            table[i][j] = pos[c]
    names = ["".join(_SIGN_CHARS[v] for v in f) for f in fl]
    S = validate(table, names=names)
    rep = MatrixRep(S, field, [_face_matrix(field, f) for f in fl])
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("face action failed verification")
    return FaceResult(h + 1, rep)


def faces_from_text(text):
    """One face per line as a string over +-0; '#' starts a comment."""
    faces = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if any(c not in _SIGN_VALUES for c in line):
            raise TableFormatError(f"bad sign character in {line!r}")
        faces.append(tuple(_SIGN_VALUES[c] for c in line))
    if faces and any(len(f) != len(faces[0]) for f in faces):
        raise TableFormatError("sign vectors have mixed lengths")
    return faces


def faces_to_text(faces):
    return "\n".join("".join(_SIGN_CHARS[v] for v in f) for f in faces) + "\n"


def injective_words(n):
    """Words with no repeated letter, shortest first, lexicographic within length."""
    out = []
    for k in range(n + 1):
        out.extend(permutations(range(n), k))
    return out


def free_lrb_effdim(n, field):
    """C(n,2) + n + 1 for the free left regular band monoid on n letters.

    The witness embeds each word into sign vectors over A union B (B the
    2-subsets of the letters): letter a is + at coordinate a, + at {j,k} when
    a = j, - when a = k, 0 elsewhere.  Injectivity of the embedding and
    effectiveness of the linearized action are both checked; the matching
    lower bound is quoted, not recomputed.
    """
    if n < 1:
        raise EffdimError("need at least one generator")
    if n > 5:
        raise TooLargeError("free left regular band table capped at n = 5")
    words = injective_words(n)
    idx = {w: i for i, w in enumerate(words)}

    def mul(u, v):
        out = list(u)
        for a in v:
            if a not in out:
                out.append(a)
        return tuple(out)

    names = ["1"] + ["".join(_LETTERS[a] for a in w) for w in words[1:]]
    S = validate([[idx[mul(u, v)] for v in words] for u in words], names=names)

    pairs = list(combinations(range(n), 2))
    width = n + len(pairs)
    letter_vecs = []
    for a in range(n):
        vec = [0] * width
        vec[a] = 1
        for t, (j, k) in enumerate(pairs):
            if a == j:
                vec[n + t] = 1
            elif a == k:
                vec[n + t] = -1
        letter_vecs.append(tuple(vec))

    def embed(w):
        vec = (0,) * width
        for a in w:
            vec = tuple(x if x != 0 else y for x, y in zip(vec, letter_vecs[a]))
        return vec

    images = [embed(w) for w in words]
    if len(set(images)) != len(images):
        raise EffdimError("sign embedding failed to separate words")
    rep = MatrixRep(S, field, [_face_matrix(field, v) for v in images])
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("embedded sign action failed verification")
    return FreeLrbResult(len(pairs) + n + 1, rep, S)


def _distinct_scalars(field, k):
    if field.size is not None:
        if field.size < k:
            raise FieldTooSmallError(f"need {k} distinct scalars, field has {field.size}")
        return [field.from_code(c) for c in range(k)]
    return [Fraction(i) for i in range(k)]


def rectangular_band_effdim(m, n, field):
    """0, 2, or 3 by shape, with rank-one idempotent witness matrices.

    A single point needs nothing; a one-sided band embeds in 2x2 matrices;
    a genuine rectangle needs 3x3 with scalar tags a_i, b_j drawn from the
    first field elements (so finite fields must have at least max(m, n)).
    """
    if m < 1 or n < 1:
        raise EffdimError("band sides must be positive")
    els = [(i, j) for i in range(m) for j in range(n)]
    idx = {e: t for t, e in enumerate(els)}
    S = validate([[idx[(a[0], b[1])] for b in els] for a in els])
    one = field.one
    zero = field.zero
    if m == 1 and n == 1:
        return RectBandResult(0, MatrixRep(S, field, [Matrix.zeros(field, 0, 0)]))
    if m == 1 or n == 1:
        scal = _distinct_scalars(field, max(m, n))
        if m == 1:
            mats = [Matrix(field, [[one, scal[j]], [zero, zero]]) for _, j in els]
        else:
            mats = [Matrix(field, [[one, zero], [scal[i], zero]]) for i, _ in els]
        value = 2
    else:
        a = _distinct_scalars(field, m)
        b = _distinct_scalars(field, n)
        mats = [
            Matrix(
                field,
                [
                    [one, b[j], zero],
                    [zero, zero, zero],
                    [a[i], field.mul(a[i], b[j]), zero],
                ],
            )
            for i, j in els
        ]
        value = 3
    rep = MatrixRep(S, field, mats)
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("rectangular band witness failed verification")
    return RectBandResult(value, rep)
