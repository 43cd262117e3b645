"""Constructors for classical finite semigroup families.

Every constructor emits a validated multiplication table in a fixed,
reproducible element order (function tables and matrices lexicographic on
their natural encodings, words shortest first) plus metadata recording the
known effective dimension over the complex numbers and the rule or citation
that value comes from.  Transformation families additionally carry their
partial maps so rules that inspect the action, like the doubly transitive
criterion, can use them directly.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial

from .bands import injective_words, sign_monoid
from .cayley import CayleyTable, validate
from .errors import (
    EffdimError,
    NotClosedError,
    RuleInapplicableError,
    TooLargeError,
    UnknownFamilyError,
)
from .fields import ExtField, PrimeField, is_prime
from .linalg import Matrix
from .nilpotent import (
    cyclic_semigroup_table,
    free_comm_nilpotent_table,
    free_nilpotent_table,
)
from .quiver import Quiver, build
from .reps import MatrixRep, verify

_SIZE_CAP = 10**4


def _cap(size, what):
    if size > _SIZE_CAP:
        raise TooLargeError(f"{what} has {size} elements, over the {_SIZE_CAP} budget")
    return size


def _compose(f, g):
    # (fg)(x) = f(g(x)); None marks undefined points and propagates
    return tuple(f[g[x]] if g[x] is not None else None for x in range(len(f)))


def _map_name(f):
    if len(f) > 9:
        return None
    return "".join("-" if v is None else str(v) for v in f)


class TransformationMonoid:
    """Set of partial maps on {0..points-1} closed under (fg)(x) = f(g(x)).

    The table is rebuilt from composition on construction, so it is always
    consistent with the maps.  Units are the permutation elements; in a
    composition-closed finite set a permutation's inverse is one of its own
    powers, so totality plus bijectivity is the whole condition.
    """

    __slots__ = ("points", "elements", "table", "unit_indices")

    def __init__(self, points, elements, names=None):
        els = [tuple(f) for f in elements]
        idx = {}
        for i, f in enumerate(els):
            if len(f) != points:
                raise EffdimError(f"map {f} is not on {points} points")
            if any(v is not None and not (0 <= v < points) for v in f):
                raise EffdimError(f"map {f} leaves the point set")
            if f in idx:
                raise EffdimError(f"map {f} listed twice")
            idx[f] = i
        n = len(els)
        table = [[0] * n for _ in range(n)]
        for i, f in enumerate(els):
            for j, g in enumerate(els):
                h = _compose(f, g)
                if h not in idx:
                    raise NotClosedError(f"composite of {f} and {g} is missing")
                table[i][j] = idx[h]
        if names is None:
            names = [_map_name(f) for f in els]
            if any(nm is None for nm in names):
                names = None
        self.points = points
        self.elements = els
        self.table = validate(table, names=names)
        self.unit_indices = [
            i for i, f in enumerate(els)
            if None not in f and len(set(f)) == points
        ]

    @property
    def units(self):
        """The group of units as its own table (sub-table of permutations)."""
        sub, _ = self.table.sub_table(self.unit_indices)
        return sub


@dataclass(frozen=True)
class FamilyMetadata:
    family: str
    params: dict
    known_effdim_over_C: "int | None"
    source: str

    def __post_init__(self):
        v = self.known_effdim_over_C
        if v is not None and (not isinstance(v, int) or v < 0):
            raise EffdimError(f"known value {v!r} is not a nonnegative integer")


@dataclass
class Family:
    semigroup: "CayleyTable | None"
    metadata: FamilyMetadata
    action: "TransformationMonoid | None" = None
    quiver: "Quiver | None" = None


def _meta(family, params, known, source):
    return FamilyMetadata(family, dict(params), known, source)


# transformation families

def _fam_T(n):
    _cap(n**n, f"T_{n}")
    act = TransformationMonoid(n, list(product(range(n), repeat=n)))
    known = n if n >= 2 else 0
    src = "doubly_transitive" if n >= 2 else "trivial"
    return Family(act.table, _meta("T", {"n": n}, known, src), action=act)


def _pt_elements(n):
    return list(product(tuple(range(n)) + (None,), repeat=n))


def _fam_PT(n):
    _cap((n + 1) ** n, f"PT_{n}")
    act = TransformationMonoid(n, _pt_elements(n))
    return Family(act.table, _meta("PT", {"n": n}, n, "natural_with_chain"), action=act)


def _fam_IS(n):
    _cap(sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1)), f"IS_{n}")
    els = [f for f in _pt_elements(n)
           if len({v for v in f if v is not None})
           == sum(v is not None for v in f)]
    act = TransformationMonoid(n, els)
    return Family(act.table, _meta("IS", {"n": n}, n, "natural_with_chain"), action=act)


def _fam_O(n):
    _cap(comb(2 * n - 1, n), f"O_{n}")
    act = TransformationMonoid(n, list(combinations_with_replacement(range(n), n)))
    return Family(act.table, _meta("O", {"n": n}, None, "none"), action=act)


def _fam_S(n):
    _cap(factorial(n), f"S_{n}")
    act = TransformationMonoid(n, list(permutations(range(n))))
    return Family(act.table, _meta("S", {"n": n}, max(n - 1, 0), "classical"), action=act)


def _fam_wreath(base, m, n):
    if m < 1 or n < 1:
        raise EffdimError("wreath product needs m >= 1 and n >= 1")
    builder = _fam_IS if base == "IS" else _fam_PT
    beta_maps = builder(n).action.elements
    size = sum(m ** sum(v is not None for v in beta) for beta in beta_maps)
    _cap(size, f"Z/{m} wr {base}_{n}")
    # elements act on Z/m x [n], point (g, i) stored at index i*m + g;
    # (f, beta) sends it to (g + f(i), beta(i)) on the domain of beta
    els = []
    names = []
    for beta in beta_maps:
        dom = [i for i in range(n) if beta[i] is not None]
        for vals in product(range(m), repeat=len(dom)):
            f = {i: v for i, v in zip(dom, vals)}
            pm = [None] * (m * n)
            for i in dom:
                for g in range(m):
                    pm[i * m + g] = beta[i] * m + (g + f[i]) % m
            els.append(tuple(pm))
            names.append(
                _map_name(beta) + ":"
                + "".join(str(f[i]) if i in f else "-" for i in range(n))
            )
    act = TransformationMonoid(m * n, els, names=names if n <= 9 and m <= 9 else None)
    src = "group_mapping" if m >= 2 else "natural_with_chain"
    fam = "wreath_is" if base == "IS" else "wreath_pt"
    return Family(act.table, _meta(fam, {"m": m, "n": n}, n, src), action=act)


# matrix-like families

def _fam_B(n):
    _cap(2 ** (n * n), f"B_{n}")
    nn = n * n
    els = list(range(2**nn))

    def rows(mask):
        return [(mask >> (i * n)) & ((1 << n) - 1) for i in range(n)]

    tab = [[0] * len(els) for _ in els]
    for a in els:
        ra = rows(a)
        for b in els:
            rb = rows(b)
            out = 0
            for i in range(n):
                acc = 0
                for k in range(n):
                    if (ra[i] >> k) & 1:
                        acc |= rb[k]
                out |= acc << (i * n)
            tab[a][b] = out
    names = [format(mask, f"0{nn}b")[::-1] for mask in els]
    S = validate(tab, names=names)
    return Family(S, _meta("B", {"n": n}, 2**n - 1, "aggm"))


def _fam_Mat(n, q):
    if n not in (1, 2) or q not in (2, 3, 4, 5):
        raise TooLargeError("matrix monoid constructor covers n in {1,2}, q in {2,3,4,5}")
    f = PrimeField(q) if is_prime(q) else ExtField(2, 2)
    nn = n * n
    _cap(q**nn, f"Mat_{n}(F_{q})")

    def decode(code):
        entries = []
        for _ in range(nn):
            entries.append(code % q)
            code //= q
        entries.reverse()
        return Matrix(f, [[f.from_code(entries[i * n + j]) for j in range(n)]
                          for i in range(n)])

    mats = [decode(c) for c in range(q**nn)]

    def encode(M):
        code = 0
        for i in range(n):
            for j in range(n):
                code = code * q + f.to_code(M.data[i][j])
        return code

    tab = [[encode(a.mul(b)) for b in mats] for a in mats]
    names = ["".join(str(f.to_code(M.data[i][j])) for i in range(n) for j in range(n))
             for M in mats]
    S = validate(tab, names=names)
    known = (q**n - 1) // (q - 1)
    src = "aggm" if q == 2 else "group_mapping"
    return Family(S, _meta("Mat", {"n": n, "q": q}, known, src))


# commutative families

def _invariant_factor_count(invariants):
    count = 0
    for p in range(2, max(invariants, default=1) + 1):
        if not is_prime(p):
            continue
        count = max(count, sum(1 for d in invariants if d % p == 0))
    return count


def _fam_Z(invariants):
    invariants = [int(d) for d in invariants]
    if not invariants or any(d < 1 for d in invariants):
        raise EffdimError("invariants must be positive integers")
    size = 1
    for d in invariants:
        size *= d
    _cap(size, "Z" + str(tuple(invariants)))
    els = list(product(*[range(d) for d in invariants]))
    idx = {e: i for i, e in enumerate(els)}
    tab = [[idx[tuple((x + y) % d for x, y, d in zip(a, b, invariants))]
            for b in els] for a in els]
    names = ["".join(str(v) for v in e) for e in els] if all(d <= 10 for d in invariants) else None
    S = validate(tab, names=names)
    return Family(S, _meta("Z", {"invariants": invariants},
                           _invariant_factor_count(invariants), "abelian_dual"))


def _fam_L(n):
    if n < 1:
        raise EffdimError("the antichain lattice needs n >= 1")
    _cap(n + 2, f"L_{n}")
    top = n + 1

    def meet(x, y):
        if x == y:
            return x
        if x == top:
            return y
        if y == top:
            return x
        return 0

    tab = [[meet(i, j) for j in range(n + 2)] for i in range(n + 2)]
    names = ["z"] + [f"a{i}" for i in range(1, n + 1)] + ["1"]
    S = validate(tab, names=names)
    known = n if n >= 2 else 2
    return Family(S, _meta("L", {"n": n}, known, "lattice"))


def _fam_R(m, n):
    if m < 1 or n < 1:
        raise EffdimError("rectangular band needs m >= 1 and n >= 1")
    _cap(m * n, f"R_{m}_{n}")
    els = [(i, j) for i in range(m) for j in range(n)]
    idx = {e: k for k, e in enumerate(els)}
    tab = [[idx[(a[0], b[1])] for b in els] for a in els]
    names = [f"{i},{j}" for i, j in els]
    S = validate(tab, names=names)
    known = 0 if m * n == 1 else 2 if min(m, n) == 1 else 3
    return Family(S, _meta("R", {"m": m, "n": n}, known, "rect_band"))


def _fam_N(m, n):
    S = free_nilpotent_table(m, n)
    _cap(S.n, f"N_{m}_{n}")
    return Family(S, _meta("N", {"m": m, "n": n}, n, "generic_nilpotent"))


def _fam_CN(m, n):
    S = free_comm_nilpotent_table(m, n)
    _cap(S.n, f"CN_{m}_{n}")
    return Family(S, _meta("CN", {"m": m, "n": n}, n, "generic_nilpotent"))


def _subset_names(m):
    letters = "abcdefghijklm"
    out = []
    for size in range(1, m + 1):
        for bits in sorted(
            (tuple(i for i in range(m) if mask >> i & 1)
             for mask in range(1, 1 << m)
             if bin(mask).count("1") == size)
        ):
            out.append(bits)
    return out, letters


def _fam_NC(m):
    if m < 1:
        raise EffdimError("NC needs m >= 1")
    _cap(2**m, f"NC_{m}")
    subsets, letters = _subset_names(m)
    els = [frozenset(s) for s in subsets]
    idx = {e: i for i, e in enumerate(els)}
    z = len(els)
    tab = [[z] * (z + 1) for _ in range(z + 1)]
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if not (a & b):
                tab[i][j] = idx[a | b]
    names = ["".join(letters[i] for i in s) for s in subsets] + ["z"]
    S = validate(tab, names=names)
    return Family(S, _meta("NC", {"m": m}, 2**m, "partial_injective"))


def _fam_partinj(ms):
    ms = [int(m) for m in ms]
    if not ms or any(m < 1 for m in ms):
        raise EffdimError("block sizes must be positive integers")
    k = len(ms)
    size = 2 - 2 * k + sum(2**m for m in ms)
    _cap(size, "partinj" + str(tuple(ms)))
    letters = "abcdefghijklmnopqrstuvwxyz"
    if sum(ms) > len(letters):
        raise TooLargeError("too many block letters to name")
    els = []
    for bi, m in enumerate(ms):
        subsets, _ = _subset_names(m)
        for s in subsets:
            if len(s) < m:  # proper subsets only
                els.append((bi, frozenset(s)))
    idx = {e: i for i, e in enumerate(els)}
    w = len(els)
    z = w + 1
    tab = [[z] * (z + 1) for _ in range(z + 1)]
    for i, (bi, a) in enumerate(els):
        for j, (bj, b) in enumerate(els):
            if bi != bj or (a & b):
                continue
            u = a | b
            tab[i][j] = w if len(u) == ms[bi] else idx[(bi, u)]
    offs = [sum(ms[:i]) for i in range(k)]
    names = ["".join(letters[offs[bi] + p] for p in sorted(s)) for bi, s in els]
    names += ["w", "z"]
    S = validate(tab, names=names)
    return Family(S, _meta("partinj", {"ms": ms}, size, "partial_injective"))


def _fam_C(m, n):
    S = cyclic_semigroup_table(m, n)
    _cap(S.n, f"C_{m}_{n}")
    return Family(S, _meta("C", {"m": m, "n": n}, min(m + 1, n), "cyclic_power"))


def _fam_F(n):
    if n < 0:
        raise EffdimError("letter count must be nonnegative")
    words = injective_words(n)
    _cap(len(words), f"F_{n}")
    idx = {w: i for i, w in enumerate(words)}

    def concat(u, v):
        out = list(u)
        for x in v:
            if x not in out:
                out.append(x)
        return tuple(out)

    tab = [[idx[concat(u, v)] for v in words] for u in words]
    letters = "abcdefghijklmnopqrstuvwxyz"
    names = ["1"] + ["".join(letters[x] for x in w) for w in words[1:]]
    S = validate(tab, names=names)
    return Family(S, _meta("F", {"n": n}, comb(n, 2) + n + 1, "free_lrb"))


def _fam_sign(n):
    if n < 1:
        raise EffdimError("sign power needs n >= 1")
    _cap(3**n, f"sign_{n}")
    S, _ = sign_monoid(n)
    return Family(S, _meta("sign", {"n": n}, n + 1, "sign_power"))


# quiver-backed families

def _fam_path_A(n):
    if n < 1:
        raise EffdimError("path family needs n >= 1")
    Q = Quiver([f"{i + 1}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])
    S = build("path", Q)
    _cap(S.n, f"path A_{n}")
    return Family(S, _meta("path_A", {"n": n}, n, "path_generic"), quiver=Q)


def _fam_incidence_chain(n):
    if n < 1:
        raise EffdimError("incidence family needs n >= 1")
    Q = Quiver.from_poset(
        {"vertices": n, "relation": [[i, i + 1] for i in range(n - 1)]})
    S = build("incidence", Q)
    _cap(S.n, f"incidence chain_{n}")
    return Family(S, _meta("incidence_chain", {"n": n}, n, "incidence_natural"),
                  quiver=Q)


def _fam_truncated_loop(N):
    if N < 1:
        raise EffdimError("truncation length must be at least 1")
    Q = Quiver(["v"], [(0, 0)])
    _cap(N + 2, f"truncated loop N={N}")
    S = build("truncated", Q, N=N)
    return Family(S, _meta("truncated_loop", {"N": N}, N, "truncated_generic"),
                  quiver=Q)


# cited-only entries: no constructor, value carried as metadata

def _fam_K(n):
    if n < 1:
        raise EffdimError("K needs n >= 1")
    return Family(None, _meta("K", {"n": n}, n, "cited"))


def _fam_PAut(n, q):
    if n < 1 or q < 2:
        raise EffdimError("PAut needs n >= 1 and a prime power q >= 2")
    return Family(None, _meta("PAut", {"n": n, "q": q},
                              (q**n - 1) // (q - 1), "cited"))


_REGISTRY = {
    "T": (_fam_T, ("n",)),
    "PT": (_fam_PT, ("n",)),
    "IS": (_fam_IS, ("n",)),
    "O": (_fam_O, ("n",)),
    "S": (_fam_S, ("n",)),
    "B": (_fam_B, ("n",)),
    "Mat": (_fam_Mat, ("n", "q")),
    "Z": (_fam_Z, ("invariants",)),
    "L": (_fam_L, ("n",)),
    "R": (_fam_R, ("m", "n")),
    "N": (_fam_N, ("m", "n")),
    "CN": (_fam_CN, ("m", "n")),
    "NC": (_fam_NC, ("m",)),
    "partinj": (_fam_partinj, ("ms",)),
    "C": (_fam_C, ("m", "n")),
    "F": (_fam_F, ("n",)),
    "sign": (_fam_sign, ("n",)),
    "wreath_is": (lambda m, n: _fam_wreath("IS", m, n), ("m", "n")),
    "wreath_pt": (lambda m, n: _fam_wreath("PT", m, n), ("m", "n")),
    "path_A": (_fam_path_A, ("n",)),
    "incidence_chain": (_fam_incidence_chain, ("n",)),
    "truncated_loop": (_fam_truncated_loop, ("N",)),
    "K": (_fam_K, ("n",)),
    "PAut": (_fam_PAut, ("n", "q")),
}


def family_names():
    return sorted(_REGISTRY)


def make_family(name, **params):
    """Build the named family at the given parameters.

    Returns a Family whose semigroup is None only for cited-only entries
    (K, PAut), which carry a literature value but no constructor here.
    """
    if name not in _REGISTRY:
        raise UnknownFamilyError(
            f"unknown family {name!r}; known: {', '.join(family_names())}")
    builder, keys = _REGISTRY[name]
    missing = [k for k in keys if k not in params]
    extra = [k for k in params if k not in keys]
    if missing or extra:
        raise EffdimError(
            f"family {name} takes parameters {', '.join(keys)}")
    return builder(*[params[k] for k in keys])


@dataclass
class DoublyTransitiveResult:
    value: int
    witness: MatrixRep


def natural_rep(act, field):
    """Column-convention permutation-style module: M_f e_j = e_{f(j)}."""
    n = act.points
    mats = []
    for f in act.elements:
        M = Matrix.zeros(field, n, n)
        for j, v in enumerate(f):
            if v is not None:
                M.data[v][j] = field.one
        mats.append(M)
    return MatrixRep(act.table, field, mats)


def doubly_transitive_effdim(act, field):
    """Exact value n for total maps with 2-transitive units and a singular map.

    The witness is the verified natural module.  Hypotheses: every element
    total, the unit group transitive on ordered distinct pairs, at least one
    non-permutation element, and the field characteristic not dividing the
    unit group order.
    """
    n = act.points
    if any(None in f for f in act.elements):
        raise RuleInapplicableError("rule needs total transformations")
    units = act.unit_indices
    if len(units) == len(act.elements):
        raise RuleInapplicableError("no singular transformation present")
    if n < 2:
        raise RuleInapplicableError("unit group is not doubly transitive")
    target = n * (n - 1)
    orbit = {(0, 1)}
    frontier = [(0, 1)]
    while frontier:
        x, y = frontier.pop()
        for u in units:
            f = act.elements[u]
            nxt = (f[x], f[y])
            if nxt not in orbit:
                orbit.add(nxt)
                frontier.append(nxt)
    if len(orbit) != target:
        raise RuleInapplicableError("unit group is not doubly transitive")
    p = getattr(field, "p", None)
    if p is not None and len(units) % p == 0:
        raise RuleInapplicableError(
            f"field characteristic {p} divides the unit group order {len(units)}")
    rep = natural_rep(act, field)
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("natural module failed verification")
    return DoublyTransitiveResult(n, rep)
