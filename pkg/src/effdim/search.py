"""Exhaustive search for effective representations at a fixed dimension.

decide_dim answers "does S admit an effective d-dimensional module over this
finite field" by depth first search over generator images.  Matrices are
encoded as base-q integers so the hot loop works on int64 arrays: assigning a
candidate to one generator replays a precompiled schedule that forces the
images of every newly reachable element, checks each forced product against
the multiplication table, and checks pairwise distinctness of images.  A
branch dies at its first violated constraint.  Survivors at deeper levels are
prefiltered once per generator against the constraints that generator alone
must satisfy.

The exhaustive "no witness at dimension d" outcome is itself a certificate:
together with an upper witness it pins the effective dimension exactly.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._backend import kernels
from .cayley import CayleyTable, greedy_generators
from .errors import BudgetExceededError, EffdimError, NotGeneratingError, TooLargeError
from .fields import ExtField, PrimeField, field_tables, is_prime
from .linalg import Matrix
from .reps import MatrixRep, verify

# survivor lists larger than this are not materialized; the level streams
# over the raw candidate range instead
_PREFILTER_CAP = 1 << 20


@dataclass(frozen=True)
class LowerBoundOnly:
    """Search exhausted every dimension up to bound without a witness.

    The effective dimension over the searched field exceeds bound.
    """

    bound: int


@dataclass
class SearchTask:
    semigroup: CayleyTable
    d: int
    field: object
    gens: list = dc_field(default_factory=list)
    unital: bool = False

    def __post_init__(self):
        if not self.gens:
            self.gens = greedy_generators(self.semigroup)


def build_schedule(table, known_before, g):
    """Ops forced by assigning g after known_before already have images.

    Returns (ops, added) where ops is an int64 array of rows (mode, x, y, c):
    mode 2 rejects the branch when images of x and y coincide, mode 0
    recomputes the product of x and y and rejects unless it encodes like c,
    mode 1 defines the image of c as that product.  added lists the elements
    whose images become defined, starting with g, in definition order.
    """
    table = np.asarray(table)
    known = list(known_before)
    defined = set(known)
    ops = [(2, x, g, 0) for x in known]
    known.append(g)
    defined.add(g)
    k = len(known) - 1
    while k < len(known):
        xk = known[k]
        for i in range(k + 1):
            xi = known[i]
            pairs = ((xk, xk),) if i == k else ((xi, xk), (xk, xi))
            for a, b in pairs:
                p = int(table[a, b])
                if p in defined:
                    ops.append((0, a, b, p))
                else:
                    ops.append((1, a, b, p))
                    for y in known:
                        ops.append((2, y, p, 0))
                    known.append(p)
                    defined.add(p)
        k += 1
    arr = np.array(ops, dtype=np.int64).reshape(-1, 4)
    return arr, known[len(known_before):]


def _identity_codes(f, d):
    oc = f.to_code(f.one)
    m = np.zeros((d, d), dtype=np.int64)
    np.fill_diagonal(m, oc)
    return m


def _apply_schedule(ops, img, enc, elem, cand, add_t, mul_t, div, d, q):
    """Mirror the kernel: decode cand into img[elem] and replay mode-1 ops."""
    m = np.empty((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            m[i, j] = (cand // int(div[i * d + j])) % q
    img[elem] = m
    enc[elem] = cand
    for t in range(ops.shape[0]):
        if ops[t, 0] != 1:
            continue
        a, b, c = int(ops[t, 1]), int(ops[t, 2]), int(ops[t, 3])
        acc = np.zeros((d, d), dtype=np.int64)
        for k in range(d):
            acc = add_t[acc, mul_t[img[a][:, k][:, None], img[b][k, :][None, :]]]
        img[c] = acc
        enc[c] = int(np.dot(acc.reshape(-1), div))


class _Plan:
    """Per-task constants shared by every DFS worker."""

    def __init__(self, task):
        S, d, f = task.semigroup, task.d, task.field
        if f.size is None:
            raise EffdimError("search needs a finite field")
        if d < 1:
            raise EffdimError("search dimension must be at least 1")
        q = f.size
        if q ** (d * d) > 2**62:
            raise TooLargeError(
                f"candidate space q^(d*d) = {q}^{d * d} does not fit the int64 encoding"
            )
        self.S, self.d, self.f, self.q = S, d, f, q
        self.space = q ** (d * d)
        self.add_t, self.mul_t, _, _ = field_tables(f)
        self.div = q ** np.arange(d * d - 1, -1, -1, dtype=np.int64)

        base = []
        self.img0 = np.zeros((S.n, d, d), dtype=np.int64)
        self.enc0 = np.zeros(S.n, dtype=np.int64)
        if task.unital:
            if S.identity is None:
                raise EffdimError("unital search requested but the table has no identity")
            e = S.identity
            self.img0[e] = _identity_codes(f, d)
            self.enc0[e] = int(np.dot(self.img0[e].reshape(-1), self.div))
            base.append(e)
        self.base = base

        known = list(base)
        self.slots = []
        for g in task.gens:
            if not (0 <= g < S.n):
                raise EffdimError(f"generator {g} out of range")
            if g in known:
                continue
            ops, added = build_schedule(S.table, known, g)
            self.slots.append((g, ops))
            known.extend(added)
        if len(known) != S.n:
            missing = sorted(set(range(S.n)) - set(known))
            raise NotGeneratingError(f"generators do not reach elements {missing}")
        # constraints each slot generator satisfies on its own, used to
        # prefilter candidate lists once instead of per branch
        self.solo = [build_schedule(S.table, base, g)[0] for g, _ in self.slots]


class _Search:
    def __init__(self, plan, budget):
        self.p = plan
        self.budget = budget
        self.nodes = 0
        self.prefilters = [None] * len(plan.slots)

    def _charge(self, used):
        self.nodes += int(used)

    def _left(self):
        left = self.budget - self.nodes
        if left <= 0:
            raise BudgetExceededError(self.nodes)
        return left

    def _prefilter(self, level):
        """Survivors of the slot's solo schedule, or None to stream the range."""
        if self.prefilters[level] is not None:
            return self.prefilters[level]
        p = self.p
        g, _ = p.slots[level]
        surv, _, used, hit = kernels.scan_range(
            p.solo[level], p.img0, p.enc0, g, p.d, p.q, p.div, p.add_t, p.mul_t,
            0, p.space, _PREFILTER_CAP + 1, self._left(),
        )
        self._charge(used)
        if hit:
            raise BudgetExceededError(self.nodes)
        if len(surv) > _PREFILTER_CAP:
            surv = False
        self.prefilters[level] = surv
        return surv

    def run(self, start=0, stop=None):
        p = self.p
        stop = p.space if stop is None else stop
        return self._dfs(0, p.img0, p.enc0, start, stop)

    def _dfs(self, level, img, enc, start, stop):
        p = self.p
        if level == len(p.slots):
            return img.copy()
        g, ops = p.slots[level]
        cands = False if level == 0 else self._prefilter(level)
        pos = start if level == 0 else 0
        while True:
            if cands is False:
                lo, hi = (pos, stop) if level == 0 else (pos, p.space)
                if lo >= hi:
                    return None
                surv, nxt, used, hit = kernels.scan_range(
                    ops, img, enc, g, p.d, p.q, p.div, p.add_t, p.mul_t,
                    lo, hi, 1, self._left(),
                )
            else:
                if pos >= len(cands):
                    return None
                surv, nxt, used, hit = kernels.scan_list(
                    ops, img, enc, g, p.d, p.q, p.div, p.add_t, p.mul_t,
                    cands[pos:], 1, self._left(),
                )
                nxt = pos + nxt
            self._charge(used)
            if hit:
                raise BudgetExceededError(self.nodes)
            if len(surv) == 0:
                return None
            img2, enc2 = img.copy(), enc.copy()
            _apply_schedule(ops, img2, enc2, g, int(surv[0]), p.add_t, p.mul_t,
                            p.div, p.d, p.q)
            found = self._dfs(level + 1, img2, enc2, 0, 0)
            if found is not None:
                return found
            pos = nxt


def _codes_to_rep(plan, codes):
    f, d, S = plan.f, plan.d, plan.S
    mats = [
        Matrix(f, [[f.from_code(int(codes[s, i, j])) for j in range(d)]
                   for i in range(d)])
        for s in range(S.n)
    ]
    rep = MatrixRep(S, f, mats)
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError("search produced a witness that fails verification")
    return rep


def decide_dim(task, budget=10**9, jobs=1, stats=None):
    """Effective MatrixRep of dimension task.d over task.field, or None.

    Exhausts the candidate space, so None means no such module exists.  The
    witness returned is the least one in the base-q encoding order of the
    generator images, regardless of jobs.  Raises BudgetExceededError once
    more than budget schedule nodes ran without settling the answer.
    """
    plan = _Plan(task)
    if not plan.slots:
        # everything forced by the identity alone
        codes = plan.img0.copy()
        rep = _codes_to_rep(plan, codes)
        if stats is not None:
            stats["nodes"] = 0
        return rep

    if jobs <= 1 or plan.space < 2 * jobs:
        search = _Search(plan, budget)
        try:
            codes = search.run()
        finally:
            if stats is not None:
                stats["nodes"] = search.nodes
        return None if codes is None else _codes_to_rep(plan, codes)

    # split the root candidate range across threads; the kernels drop the GIL
    bounds = np.linspace(0, plan.space, jobs + 1, dtype=np.int64)
    share = budget // jobs
    searches = [_Search(plan, share if w else share + budget % jobs)
                for w in range(jobs)]

    def worker(w):
        try:
            return ("ok", searches[w].run(int(bounds[w]), int(bounds[w + 1])))
        except BudgetExceededError:
            return ("budget", None)

    with ThreadPoolExecutor(max_workers=jobs) as ex:
        outcomes = list(ex.map(worker, range(jobs)))
    total = sum(s.nodes for s in searches)
    if stats is not None:
        stats["nodes"] = total
    for kind, codes in outcomes:
        if kind == "budget":
            # an unfinished earlier chunk could hide a smaller witness
            raise BudgetExceededError(total)
        if codes is not None:
            return _codes_to_rep(plan, codes)
    return None


def field_of_order(q):
    """The prime field F_q, or F_{p^k} with the default modulus."""
    if q < 2:
        raise EffdimError("field order must be at least 2")
    if is_prime(q):
        return PrimeField(q)
    p = 2
    while q % p:
        p += 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise EffdimError(f"{q} is not a prime power")
    return ExtField(p, k)


def effdim_over_Fq(S, q, d_max, budget=10**9, jobs=1, unital=None, stats=None):
    """Least d <= d_max admitting an effective module over F_q.

    Returns the dimension, or LowerBoundOnly(d_max) when every searched
    dimension was exhausted without a witness.  Searching stops at the first
    success since an effective module pads to every larger dimension.
    """
    if S.n == 1:
        return 0
    f = field_of_order(q)
    if unital is None:
        unital = S.is_monoid()
    gens = greedy_generators(S)
    for d in range(1, d_max + 1):
        task = SearchTask(S, d, f, gens, unital)
        sub = {} if stats is not None else None
        found = decide_dim(task, budget=budget, jobs=jobs, stats=sub)
        if stats is not None:
            stats[d] = sub["nodes"]
        if found is not None:
            return d
    return LowerBoundOnly(d_max)
