"""Nilpotent-semigroup rules: the index bound, generic witnesses, the
partial-injective-action rule, and cyclic semigroups.

A nilpotent semigroup of index n embeds into the strictly upper triangular
n x n matrices, and a random tuple of such matrices is effective off a proper
closed subvariety, so sampling with retries produces verified witnesses.  The
index of an eventually idempotent element is a lower bound through minimal
polynomials, and left actions by partial injective maps give semigroups whose
effective dimension equals their cardinality.
"""

import random
from dataclasses import dataclass
from itertools import product
from string import ascii_lowercase

from .cayley import classify_basic, index_period, validate
from .errors import (
    EffdimError,
    HypothesisFailedError,
    RetriesExhaustedError,
    TooLargeError,
)
from .fields import (
    PrimeField,
    Rationals,
    field_to_json,
    is_prime,
    root_of_unity,
    scalar_to_json,
)
from .linalg import Matrix, block_diag
from .reps import MatrixRep, extend_from_generators, verify

# resamples allowed after the first draw; the non-effective locus is a proper
# closed subvariety, so repeated failure over a big field means a bug
_RETRY_CAP = 32

_TABLE_CAP = 4096


def cornilp_bound(S):
    """Largest n with s^n = s^{n+1} but s^{n-1} != s^n for some s; 0 if none."""
    best = 0
    for s in range(S.n):
        ip = index_period(S, s)
        if ip.period != 1:
            continue
        # s^0 means the adjoined identity, so an identity element gives nothing
        if ip.index == 1 and S.identity == s:
            continue
        best = max(best, ip.index)
    return best


def free_nilpotent_table(m, n):
    """N_{m,n}: words of length < n over m letters, zero last."""
    if m < 1 or n < 2:
        raise EffdimError("free nilpotent tables need m >= 1 and n >= 2")
    words = []
    for k in range(1, n):
        words.extend(product(range(m), repeat=k))
    if len(words) + 1 > _TABLE_CAP:
        raise TooLargeError(f"N_{{{m},{n}}} has {len(words) + 1} elements")
    index = {w: i for i, w in enumerate(words)}
    z = len(words)
    t = [[z] * (z + 1) for _ in range(z + 1)]
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            t[i][j] = index.get(u + v, z)
    names = ["".join(ascii_lowercase[c] for c in w) for w in words] + ["z"]
    return validate(t, names)


def _monomial_name(alpha):
    parts = []
    for letter, e in zip(ascii_lowercase, alpha):
        if e == 1:
            parts.append(letter)
        elif e > 1:
            parts.append(f"{letter}{e}")
    return "".join(parts)


def free_comm_nilpotent_table(m, n):
    """CN_{m,n}: exponent vectors of total degree in [1, n-1], zero last."""
    if m < 1 or n < 2:
        raise EffdimError("free nilpotent tables need m >= 1 and n >= 2")
    vecs = []
    for k in range(1, n):
        layer = [a for a in product(range(k + 1), repeat=m) if sum(a) == k]
        vecs.extend(sorted(layer, reverse=True))
    if len(vecs) + 1 > _TABLE_CAP:
        raise TooLargeError(f"CN_{{{m},{n}}} has {len(vecs) + 1} elements")
    index = {a: i for i, a in enumerate(vecs)}
    z = len(vecs)
    t = [[z] * (z + 1) for _ in range(z + 1)]
    for i, a in enumerate(vecs):
        for j, b in enumerate(vecs):
            s = tuple(x + y for x, y in zip(a, b))
            t[i][j] = index.get(s, z)
    names = [_monomial_name(a) for a in vecs] + ["z"]
    return validate(t, names)


@dataclass
class GenericSample:
    """The random point behind a generic witness, enough to replay the draw."""

    field: object
    seed: int
    tuple: list
    retries_used: int

    def to_json(self):
        entries = [
            t.to_json() if isinstance(t, Matrix) else scalar_to_json(self.field, t)
            for t in self.tuple
        ]
        return {
            "field": field_to_json(self.field),
            "seed": self.seed,
            "retries_used": self.retries_used,
            "tuple": entries,
        }


def _jordan_block(field, n):
    j = Matrix.zeros(field, n, n)
    for i in range(n - 1):
        j.data[i][i + 1] = field.one
    return j


def _random_strict_upper(field, n, rng):
    mat = Matrix.zeros(field, n, n)
    for i in range(n):
        for j in range(i + 1, n):
            if field.size is None:
                mat.data[i][j] = field.from_int(rng.randint(1, 10**6))
            else:
                mat.data[i][j] = field.from_code(rng.randrange(field.size))
    return mat


def _first_primes(m):
    out, c = [], 2
    while len(out) < m:
        if is_prime(c):
            out.append(c)
        c += 1
    return out


def generic_nilpotent_rep(kind, m, n, field, seed):
    """Sampled (or prime-scalar) n-dim effective witness for N_{m,n} or CN_{m,n}."""
    if kind not in ("free", "free_commutative"):
        raise EffdimError(f"unknown kind {kind!r}")
    if m < 1 or n < 2:
        raise EffdimError("generic witnesses need m >= 1 and n >= 2")
    free = kind == "free"
    S = free_nilpotent_table(m, n) if free else free_comm_nilpotent_table(m, n)
    gens = list(range(m))
    rng = random.Random(seed)
    deterministic = not free and field.size is None
    retries = 0
    while True:
        if free:
            tup = [_random_strict_upper(field, n, rng) for _ in range(m)]
            images = tup
        elif deterministic:
            tup = [field.from_int(p) for p in _first_primes(m)]
            images = [_jordan_block(field, n).scalar_mul(c) for c in tup]
        else:
            tup = [field.from_code(1 + rng.randrange(field.size - 1)) for _ in range(m)]
            images = [_jordan_block(field, n).scalar_mul(c) for c in tup]
        rep = extend_from_generators(S, gens, images)
        res = verify(rep)
        if res.is_homomorphism and res.is_effective:
            return rep, GenericSample(field, seed, tup, retries)
        if deterministic:
            raise EffdimError("prime scalar construction failed effectiveness")
        retries += 1
        if retries > _RETRY_CAP:
            size = "infinite" if field.size is None else str(field.size)
            raise RetriesExhaustedError(
                f"no effective sample in {_RETRY_CAP} resamples over a field "
                f"of size {size}; enlarge the field"
            )


@dataclass
class PartInjResult:
    value: int
    witness: MatrixRep


def partinj_effdim(S, field=None):
    """Exact rule for nilpotent left actions by partial injective maps.

    Hypotheses, checked exhaustively: for each s the map t -> st on the
    nonzero elements is injective where the product is nonzero, and exactly
    one nonzero w has Nw = {z}.  Under them the quotient module kN^1/kz is
    effective of dimension |N|, which meets the general |S*| - 1 bound.
    """
    if field is None:
        field = Rationals()
    flags = classify_basic(S)
    if not flags.is_nilpotent or flags.zero is None:
        raise HypothesisFailedError("not a nilpotent semigroup with zero")
    z = flags.zero
    body = [t for t in range(S.n) if t != z]
    for s in range(S.n):
        hit = {}
        for t in body:
            x = S.mul(s, t)
            if x == z:
                continue
            if x in hit:
                raise HypothesisFailedError(
                    f"left action by {S.name_of(s)} is not partial injective: "
                    f"images of {S.name_of(hit[x])} and {S.name_of(t)} agree"
                )
            hit[x] = t
    killed = [w for w in body if all(S.mul(s, w) == z for s in range(S.n))]
    if len(killed) != 1:
        found = ", ".join(S.name_of(w) for w in killed) or "none"
        raise HypothesisFailedError(
            f"need exactly one nonzero w with Nw = {{z}}, found: {found}"
        )

    # basis of kN^1/kz: the nonzero elements, then the adjoined identity
    pos = {t: c for c, t in enumerate(body)}
    dim = len(body) + 1
    mats = []
    for s in range(S.n):
        mat = Matrix.zeros(field, dim, dim)
        if s != z:
            for c, t in enumerate(body):
                x = S.mul(s, t)
                if x != z:
                    mat.data[pos[x]][c] = field.one
            mat.data[pos[s]][dim - 1] = field.one
        mats.append(mat)
    rep = MatrixRep(S, field, mats)
    res = verify(rep)
    if not (res.is_homomorphism and res.is_effective):
        raise EffdimError("partial injective module failed verification")
    return PartInjResult(value=S.n, witness=rep)


def cyclic_semigroup_table(m, n):
    """C_{m,n} = <x : x^{n+1} = x^m> with elements x, x^2, ..., x^n."""
    if not 1 <= m <= n:
        raise EffdimError("cyclic semigroups need 1 <= m <= n")
    period = n - m + 1

    def red(k):
        return k if k <= n else m + (k - m) % period

    t = [[red(i + j) - 1 for j in range(1, n + 1)] for i in range(1, n + 1)]
    names = ["x" if k == 1 else f"x{k}" for k in range(1, n + 1)]
    return validate(t, names)


@dataclass
class CyclicResult:
    value: int
    witness: MatrixRep
    field: object


def cyclic_effdim(m, n):
    """min(m+1, n) with a Jordan-block witness over a cyclotomic prime field."""
    if not 1 <= m <= n:
        raise EffdimError("cyclic semigroups need 1 <= m <= n")
    S = cyclic_semigroup_table(m, n)
    p, xi = root_of_unity(n - m + 1)
    f = PrimeField(p)
    # m = 1 makes the table a cyclic group, and a monoid module must be
    # unital, so the unit block stands in for the 1 x 1 nilpotent one
    head = Matrix.identity(f, 1) if m == 1 else _jordan_block(f, m)
    if m == n:
        gen = head
    else:
        gen = block_diag(f, [head, Matrix(f, [[f.from_int(xi)]])])
    rep = extend_from_generators(S, [0], [gen])
    res = verify(rep)
    if not (res.is_homomorphism and res.is_effective):
        raise EffdimError("cyclic witness failed verification")
    return CyclicResult(value=min(m + 1, n), witness=rep, field=f)
