"""Effective dimension of commutative inverse monoids through the dual monoid.

A finite commutative inverse monoid is a semilattice of abelian groups.  Its
dual (the monoid of multiplicative functions into a good splitting field) is
realized combinatorially: an element is a support idempotent m together with
a character of the group at m, encoded additively in invariant-factor
coordinates.  The computed value is the effective dimension over any good
splitting field (characteristic 0 or coprime splitting characteristic).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .cayley import CayleyTable, classify_basic, derive_structure, validate
from .errors import EffdimError, NotCommutativeInverseError
from .linalg import smith_form_with_transforms


@dataclass(frozen=True)
class AbelianCoords:
    """An abelian group in invariant-factor coordinates.

    elements are indices into the ambient monoid; coords[x] lives in
    Z/d_1 x ... x Z/d_r with d_1 | ... | d_r.
    """

    elements: tuple
    invariants: tuple
    coords: dict
    exponent: int


def abelian_coordinates(sub, embed):
    """Coordinates for a commutative group given as (sub_table, embedding)."""
    m = sub.n
    rows = []
    for i in range(m):
        for j in range(i, m):
            row = [0] * m
            row[i] += 1
            row[j] += 1
            row[sub.mul(i, j)] -= 1
            rows.append(row)
    diag, _, V = smith_form_with_transforms(rows)
    if len(diag) < m or any(d == 0 for d in diag):
        raise EffdimError("relation matrix does not present a finite group")
    keep = [t for t in range(m) if diag[t] != 1]
    invariants = tuple(diag[t] for t in keep)
    coords = {}
    for i in range(m):
        coords[int(embed[i])] = tuple(V[i][t] % diag[t] for t in keep)
    exponent = invariants[-1] if invariants else 1
    return AbelianCoords(
        elements=tuple(int(x) for x in embed),
        invariants=invariants,
        coords=coords,
        exponent=exponent,
    )


@dataclass(frozen=True)
class CliffordStructure:
    """Semilattice-of-groups decomposition of a commutative inverse monoid."""

    M: CayleyTable
    idempotents: tuple       # ascending element indices
    leq: dict                # (e, f) -> e <= f, i.e. ef = e
    join: dict               # (e, f) -> their join in E(M)
    groups: dict             # idempotent -> AbelianCoords
    support: dict            # element -> its idempotent


def clifford_structure(M):
    flags = classify_basic(M)
    if not (flags.is_monoid and flags.is_commutative and flags.is_inverse):
        raise NotCommutativeInverseError(
            "need a commutative inverse monoid "
            f"(monoid={flags.is_monoid}, commutative={flags.is_commutative}, "
            f"inverse={flags.is_inverse})"
        )
    g = derive_structure(M)
    idems = tuple(int(e) for e in g.idempotents)
    leq = {}
    for e in idems:
        for f in idems:
            leq[e, f] = M.mul(e, f) == e
    join = {}
    for e in idems:
        for f in idems:
            ups = [u for u in idems if leq[e, u] and leq[f, u]]
            least = [u for u in ups if all(leq[u, v] for v in ups)]
            if len(least) != 1:
                raise EffdimError("idempotents do not form a lattice")
            join[e, f] = least[0]
    groups = {}
    support = {}
    for j, (sub, embed) in g.maximal_subgroups.items():
        e = next(int(x) for x in embed if M.mul(int(x), int(x)) == int(x))
        groups[e] = abelian_coordinates(sub, embed)
        for x in embed:
            support[int(x)] = e
    if len(support) != M.n:
        raise NotCommutativeInverseError("not a union of groups")
    return CliffordStructure(
        M=M, idempotents=idems, leq=leq, join=join, groups=groups, support=support
    )


@dataclass(frozen=True)
class DualElement:
    """A multiplicative function: character coords on the group at support."""

    support: int
    character: tuple


def _char_values(group, character):
    """element -> value in Q/Z of the coordinate character, on group.elements."""
    out = {}
    for x in group.elements:
        cx = group.coords[x]
        v = sum(
            (Fraction(c * a, d) for c, a, d in zip(character, cx, group.invariants)),
            Fraction(0),
        )
        out[x] = v % 1
    return out


class DualMonoid:
    """Cayley table of the dual plus per-element support/character data."""

    def __init__(self, table, elements, values, cliff):
        self.table = table
        self.elements = elements
        self.values = values
        self.cliff = cliff

    def function(self, i):
        """The i-th dual element as a total function M -> Q/Z union {None}.

        None encodes the field value 0; a Fraction q encodes exp(2 pi i q)
        (or xi^(q*order) for a root of unity xi of that order).
        """
        cliff = self.cliff
        m = self.elements[i].support
        vals = self.values[i]
        out = {}
        for s in range(cliff.M.n):
            e = cliff.support[s]
            if cliff.leq[m, e]:
                out[s] = vals[cliff.M.mul(s, m)]
            else:
                out[s] = None
        return out


def dual_monoid(M):
    """The dual of a commutative inverse monoid, same cardinality as M."""
    cliff = clifford_structure(M)
    elements = []
    values = []
    index = {}
    for e in cliff.idempotents:
        group = cliff.groups[e]
        for character in product(*[range(d) for d in group.invariants]):
            vals = _char_values(group, character)
            key = (e, tuple(vals[x] for x in sorted(group.elements)))
            index[key] = len(elements)
            elements.append(DualElement(support=e, character=character))
            values.append(vals)
    n = len(elements)
    if n != M.n:
        raise EffdimError("dual size mismatch")
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        ma, va = elements[a].support, values[a]
        for b in range(n):
            mb, vb = elements[b].support, values[b]
            mj = cliff.join[ma, mb]
            members = sorted(cliff.groups[mj].elements)
            key = (
                mj,
                tuple(
                    (va[M.mul(x, ma)] + vb[M.mul(x, mb)]) % 1 for x in members
                ),
            )
            table[a][b] = index[key]
    return DualMonoid(validate(table), elements, values, cliff)


def dual_sidecar_json(dm):
    return [
        {"support": el.support, "character": list(el.character)}
        for el in dm.elements
    ]


def min_generators(M):
    """Minimum monoid generating set: iterated essential/useless filtering,
    then exhaustive search in increasing subset size."""
    if not M.is_monoid():
        raise EffdimError("min_generators needs a monoid")
    n = M.n

    def clos(xs):
        return frozenset(_closure(M, xs))

    full = frozenset(range(n))
    pool = [x for x in range(n) if x != M.identity]
    essential = [x for x in pool if x not in clos([y for y in pool if y != x])]
    base = clos(essential)
    if base == full:
        return len(essential), sorted(essential)
    rest = [x for x in pool if x not in base]
    # interchangeable candidates: equal closure together with the essentials
    seen = {}
    for x in rest:
        key = clos(essential + [x])
        seen.setdefault(key, x)
    rest = sorted(seen.values())
    for k in range(1, len(rest) + 1):
        for combo in combinations(rest, k):
            if clos(essential + list(combo)) == full:
                return len(essential) + k, sorted(essential + list(combo))
    raise EffdimError("monoid not generated by its own elements?")


def _closure(M, xs):
    from .cayley import generated_closure

    if not xs:
        return [M.identity]
    return generated_closure(M, xs, as_monoid=True)


def join_irreducibles(leq):
    """Indices with exactly one lower cover in the partial order matrix leq."""
    n = len(leq)
    out = []
    for x in range(n):
        below = [y for y in range(n) if y != x and leq[y][x]]
        covers = [
            y
            for y in below
            if not any(leq[y][z] and leq[z][x] for z in below if z not in (x, y))
        ]
        if len(covers) == 1:
            out.append(x)
    return out


def lattice_order(M):
    """x <= y iff xy = x, for a semilattice monoid given as its meet."""
    n = M.n
    return [[M.mul(x, y) == x for y in range(n)] for x in range(n)]


def effdim_comm_inverse(M):
    """Effective dimension over a good splitting field, with the rule used.

    Lattices count join irreducibles of the dual (elements of M with exactly
    one lower cover); abelian groups count invariant factors; the general
    case minimally generates the dual monoid.
    """
    flags = classify_basic(M)
    if not (flags.is_monoid and flags.is_commutative and flags.is_inverse):
        raise NotCommutativeInverseError(
            "effdim_comm_inverse needs a commutative inverse monoid"
        )
    if flags.is_band:
        irr = join_irreducibles(lattice_order(M))
        return {"rule": "lattice", "value": len(irr), "join_irreducibles": irr}
    if flags.is_group:
        sub, embed = M.sub_table(list(range(M.n)))
        group = abelian_coordinates(sub, embed)
        return {
            "rule": "abelian_group",
            "value": len(group.invariants),
            "invariant_factors": list(group.invariants),
        }
    dm = dual_monoid(M)
    count, gens = min_generators(dm.table)
    return {
        "rule": "dual_generators",
        "value": count,
        "dual_generators": [
            {"support": dm.elements[i].support, "character": list(dm.elements[i].character)}
            for i in gens
        ],
    }
