"""Interval reports: rules, bounds, witnesses, and search behind one summary.

effdim_interval drives a fixed pipeline and never invents a number.  Exact
claims carry the rule that produced them plus a witness that verifies, lower
entries name their certificate, and search results only close the interval
when the exhaustion ran to completion.  report_table regenerates the rows of
the known-family summary and diffs them against the registry metadata.
"""

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .bands import free_lrb_effdim, lrb_lower_bound, rectangular_band_effdim, sign_power_rep
from .cayley import chain_lengths, classify_basic, cyclic_subsemigroup, validate
from .duality import abelian_coordinates, dual_monoid, effdim_comm_inverse, lattice_order
from .errors import BudgetExceededError, EffdimError, HypothesisFailedError, TooLargeError
from .families import doubly_transitive_effdim, make_family
from .fields import PrimeField, Rationals, field_to_json, root_of_unity
from .ggm import aggm_effdim, classify_ggm, group_mapping_effdim
from .linalg import Matrix, block_diag
from .nilpotent import cornilp_bound, generic_nilpotent_rep, partinj_effdim
from .quiver import generic_quiver_rep
from .reps import MatrixRep, extend_from_generators, regular_reps, rep_from_json, rep_to_json, verify
from .search import SearchTask, decide_dim

# full/reduced regular witnesses are dense; past this size they are skipped
_REGULAR_CAP = 64


@dataclass
class LowerCert:
    """One lower bound: its value, the certificate name, and its data."""

    value: int
    certificate: str
    payload: dict


@dataclass
class UpperWitness:
    """One upper bound: a verified representation and where it came from."""

    value: int
    source: str
    rep: MatrixRep


@dataclass
class EffDimReport:
    hash: str
    field: dict
    lower: list
    upper: list
    exact: bool
    value: int | None
    rules_fired: list

    def lower_bound(self):
        return max((c.value for c in self.lower), default=0)

    def upper_bound(self):
        return min((w.value for w in self.upper), default=None)

    def to_json(self):
        return {
            "hash": self.hash,
            "field": self.field,
            "lower": [[c.value, c.certificate, c.payload] for c in self.lower],
            "upper": [
                [w.value, {"source": w.source, "rep": rep_to_json(w.rep)}]
                for w in self.upper
            ],
            "exact": self.exact,
            "value": self.value,
            "rules_fired": list(self.rules_fired),
        }


def report_from_json(obj, S):
    """Rebuild a report against S, re-verifying every upper witness."""
    if obj["hash"] != S.hash_hex():
        raise EffdimError("report belongs to a different table")
    lower = [LowerCert(int(v), c, p) for v, c, p in obj["lower"]]
    upper = []
    for v, ref in obj["upper"]:
        rep = rep_from_json(ref["rep"], S)
        chk = verify(rep)
        if not (chk.is_homomorphism and chk.is_effective):
            raise EffdimError(f"stored {ref['source']} witness no longer verifies")
        upper.append(UpperWitness(int(v), ref["source"], rep))
    return EffDimReport(
        hash=obj["hash"],
        field=obj["field"],
        lower=lower,
        upper=upper,
        exact=bool(obj["exact"]),
        value=obj["value"],
        rules_fired=list(obj["rules_fired"]),
    )


def _field_descriptor(field):
    return {"kind": "nice"} if field is None else field_to_json(field)


def _prime_factors(e):
    out = []
    f = 2
    while f * f <= e:
        if e % f == 0:
            out.append(f)
            while e % f == 0:
                e //= f
        f += 1
    if e > 1:
        out.append(e)
    return out


def _pow(field, x, k):
    out = field.one
    cur = x
    while k:
        if k & 1:
            out = field.mul(out, cur)
        cur = field.mul(cur, cur)
        k >>= 1
    return out


def _order_root(field, e):
    """An element of multiplicative order e, or None when the field lacks one."""
    if e == 1:
        return field.one
    if isinstance(field, Rationals):
        return Fraction(-1) if e == 2 else None
    q = getattr(field, "size", None)
    if q is None or (q - 1) % e:
        return None
    primes = _prime_factors(e)
    for c in range(1, q):
        y = _pow(field, field.from_code(c), (q - 1) // e)
        if _pow(field, y, e) == field.one and all(
            _pow(field, y, e // p) != field.one for p in primes
        ):
            return y
    return None


def _unity_field(field, e):
    """(field, order-e root) pair; cyclotomic prime field when field is None."""
    if field is None:
        if e <= 2:
            f = Rationals()
            return f, Fraction(1) if e == 1 else Fraction(-1)
        p, xi = root_of_unity(e)
        f = PrimeField(p)
        return f, f.from_int(xi)
    xi = _order_root(field, e)
    return (field, xi) if xi is not None else (None, None)


def _diag(field, entries):
    m = Matrix.zeros(field, len(entries), len(entries))
    for i, v in enumerate(entries):
        m.data[i][i] = v
    return m


def _shift_matrix(field, n):
    m = Matrix.zeros(field, n, n)
    for i in range(n - 1):
        m.data[i + 1][i] = field.one
    return m


def _require_good(rep, what):
    chk = verify(rep)
    if not (chk.is_homomorphism and chk.is_effective):
        raise EffdimError(f"{what} witness failed verification")
    return rep


def _opposite(S):
    return validate(np.ascontiguousarray(S.table.T), names=S.names)


def _peel(S):
    """The identity-free part of a monoid, when it is a closed non-monoid.

    In that case S is exactly the peeled part with an identity adjoined, so
    the two share their effective dimension and witnesses extend by I.
    """
    if S.identity is None or S.n < 2:
        return None
    try:
        T, embed = S.sub_table([i for i in range(S.n) if i != S.identity])
    except EffdimError:
        return None
    return None if T.is_monoid() else (T, embed)


def _extend_by_identity(S, embed, rep):
    mats = [None] * S.n
    for i, mat in enumerate(rep.mats):
        mats[int(embed[i])] = mat
    mats[S.identity] = Matrix.identity(rep.field, rep.dim)
    return MatrixRep(S, rep.field, mats)


def _transpose_onto(T, rep):
    return MatrixRep(T, rep.field, [m.transpose() for m in rep.mats])


def _onto_original(S, work, rep):
    """Re-root a witness built over S or its completion onto S itself."""
    if rep.S is S:
        return rep
    if work is not S and rep.S.n == work.n:
        # the adjoined identity sits last, so S keeps its indices
        return MatrixRep(S, rep.field, rep.mats[: S.n])
    if rep.S.hash_hex() != S.hash_hex():
        raise EffdimError("witness belongs to a different table")
    return MatrixRep(S, rep.field, rep.mats)


def _abelian_diag_rep(G, field):
    """Minimal diagonal module of an abelian group table over a chosen field.

    Returns (invariant factors, rep) or (None, None) when the field lacks a
    root of unity of the right order.
    """
    sub, embed = G.sub_table(list(range(G.n)))
    co = abelian_coordinates(sub, embed)
    wf, xi = _unity_field(field, co.exponent)
    if wf is None:
        return None, None
    mats = []
    for s in range(G.n):
        entries = [
            _pow(wf, xi, (co.exponent // d) * c)
            for d, c in zip(co.invariants, co.coords[s])
        ]
        mats.append(_diag(wf, entries))
    return list(co.invariants), MatrixRep(G, wf, mats)


def _rule_abelian(work, flags, field):
    if not (flags.is_group and flags.is_commutative):
        return None
    cert = effdim_comm_inverse(work)
    invariants, rep = _abelian_diag_rep(work, field)
    if rep is None:
        return None
    return "abelian_group", cert["value"], rep, {"invariant_factors": invariants}


def _rule_comm_inverse(work, flags, field):
    if flags.is_group or not (flags.is_commutative and flags.is_inverse):
        return None
    cert = effdim_comm_inverse(work)
    if cert["rule"] == "lattice":
        leq = lattice_order(work)
        irr = cert["join_irreducibles"]
        wf = field if field is not None else Rationals()
        mats = [
            _diag(wf, [wf.one if leq[j][s] else wf.zero for j in irr])
            for s in range(work.n)
        ]
        rep = MatrixRep(work, wf, mats)
        return "lattice", cert["value"], rep, {"join_irreducibles": irr}
    dm = dual_monoid(work)
    index = {(el.support, el.character): i for i, el in enumerate(dm.elements)}
    gens = [index[d["support"], tuple(d["character"])] for d in cert["dual_generators"]]
    fns = [dm.function(i) for i in gens]
    e = 1
    for fn in fns:
        for v in fn.values():
            if v is not None:
                e = lcm(e, v.denominator)
    wf, xi = _unity_field(field, e)
    if wf is None:
        return None
    mats = [
        _diag(
            wf,
            [wf.zero if fn[s] is None else _pow(wf, xi, int(fn[s] * e)) for fn in fns],
        )
        for s in range(work.n)
    ]
    rep = MatrixRep(work, wf, mats)
    return "dual_generators", cert["value"], rep, {"dual_generators": cert["dual_generators"]}


def _rule_ggm(work, flags, field):
    if work.n < 2:
        return None
    cls = classify_ggm(work)
    if cls.kind == "AGGM":
        wf = field if field is not None else Rationals()
        res = aggm_effdim(work, wf)
        return "aggm_rank", res.value, res.witness, {"note": res.note}
    if cls.kind == "GroupMapping":
        G = cls.rees.group
        if not classify_basic(G).is_commutative:
            return None
        invariants, gmod = _abelian_diag_rep(G, field)
        if gmod is None:
            return None
        res = group_mapping_effdim(work, gmod.field, len(invariants), gmod)
        payload = {
            "side": res.side,
            "class_count": res.class_count,
            "group_invariants": invariants,
        }
        return "group_mapping", res.value, res.witness, payload
    return None


def _rule_doubly_transitive(S, field, action):
    if action is None or action.table.hash_hex() != S.hash_hex():
        return None
    res = doubly_transitive_effdim(action, field if field is not None else Rationals())
    return "doubly_transitive", res.value, res.witness, {"points": action.points}


def _rule_partinj(S, field):
    if S.zero is None or not classify_basic(S).is_nilpotent:
        return None
    res = partinj_effdim(S, field if field is not None else Rationals())
    return "partinj_nilpotent", res.value, res.witness, {}


def _rule_cyclic(S, field):
    hit = None
    for s in range(S.n):
        powers, ip = cyclic_subsemigroup(S, s)
        if len(powers) == S.n:
            hit = (s, ip)
            break
    if hit is None:
        return None
    s0, ip = hit
    if ip.index < 2:
        # a monogenic group belongs to the abelian rule
        return None
    wf, xi = _unity_field(field, ip.period)
    if wf is None:
        return None
    head = _shift_matrix(wf, ip.index)
    gen = head if ip.period == 1 else block_diag(wf, [head, Matrix(wf, [[xi]])])
    rep = extend_from_generators(S, [s0], [gen])
    value = min(ip.index + 1, S.n)
    return "cyclic", value, rep, {"index": ip.index, "period": ip.period}


def _rule_rect_band(S, field):
    fl = classify_basic(S)
    if not fl.is_band:
        return None
    t = S.table
    rng = np.arange(S.n)
    if not (t[t, rng[:, None]] == rng[:, None]).all():
        return None
    rows, cols = {}, {}
    ridx = [rows.setdefault(tuple(map(int, t[x])), len(rows)) for x in range(S.n)]
    cidx = [cols.setdefault(tuple(map(int, t[:, x])), len(cols)) for x in range(S.n)]
    m, n = len(rows), len(cols)
    if m * n != S.n:
        return None
    wf = field if field is not None else Rationals()
    res = rectangular_band_effdim(m, n, wf)
    mats = [res.witness.mats[ridx[x] * n + cidx[x]] for x in range(S.n)]
    return "rectangular_band", res.value, MatrixRep(S, wf, mats), {"rows": m, "cols": n}


def _left_regular_only(S, field):
    M = S.monoid_completion()
    mats = []
    for s in range(M.n):
        m = Matrix.zeros(field, M.n, M.n)
        for t in range(M.n):
            m.data[M.mul(s, t)][t] = field.one
        mats.append(m)
    return MatrixRep(S, field, mats[: S.n])


def effdim_interval(S, field=None, options=None):
    """Report on the effective dimension of S over a field (None = any field
    of characteristic zero with enough roots of unity).

    Pipeline: reductions, then exact rules in precedence order (abelian
    group, commutative inverse, lattice, AGGM rank, group mapping, doubly
    transitive, partial injective nilpotent, cyclic, rectangular band),
    then lower bound certificates, verified upper witnesses, an optional
    per-dimension search over a finite field, and a family metadata check.
    Absence of an applicable rule is not an error: the interval itself is
    the result.  options: action (transformation monoid presenting the same
    table), metadata (family registry entry), witnesses (extra verified
    reps), search ({"budget", "jobs", "d_max"} over the report field),
    regular_cap (size limit for the dense regular witnesses).
    """
    opts = dict(options or {})
    descriptor = _field_descriptor(field)
    rules = []
    lower = []
    upper = []

    if S.n == 1:
        wf = field if field is not None else Rationals()
        rep = _require_good(MatrixRep(S, wf, [Matrix.zeros(wf, 0, 0)]), "trivial")
        rules.append("trivial")
        upper.append(UpperWitness(0, "trivial", rep))
        return EffDimReport(S.hash_hex(), descriptor, lower, upper, True, 0, rules)

    work = S.monoid_completion()
    if work is not S:
        rules.append("adjoin_identity")
    if S.zero is not None:
        rules.append("zero_recorded")
    flags = classify_basic(work)

    exact_hit = None

    def attempt(fn, args, mount=None):
        nonlocal exact_hit
        if exact_hit is not None:
            return
        try:
            got = fn(*args)
        except EffdimError:
            got = None
        if got is None:
            return
        name, value, rep, payload = got
        rep = mount(rep) if mount is not None else _onto_original(S, work, rep)
        rep = _require_good(rep, name)
        if rep.dim != value:
            raise EffdimError(f"{name} witness dimension {rep.dim} != value {value}")
        rules.append(name)
        upper.append(UpperWitness(value, name, rep))
        exact_hit = (name, value, payload)

    attempt(_rule_abelian, (work, flags, field))
    attempt(_rule_comm_inverse, (work, flags, field))
    attempt(_rule_ggm, (work, flags, field))
    attempt(_rule_doubly_transitive, (S, field, opts.get("action")))
    attempt(_rule_partinj, (S, field))
    attempt(_rule_cyclic, (S, field))
    attempt(_rule_rect_band, (S, field))
    if exact_hit is None:
        # the left-handed hypothesis may hold only on the mirror table; the
        # transposed witness carries the value back
        attempt(
            _rule_partinj,
            (_opposite(S), field),
            lambda rep: _transpose_onto(S, rep),
        )
    peel = _peel(S) if work is S and exact_hit is None else None
    if peel is not None:
        T, embed = peel

        def mounted(rep):
            return _extend_by_identity(S, embed, rep)

        attempt(_rule_ggm, (T, classify_basic(T), field), mounted)
        attempt(_rule_partinj, (T, field), mounted)
        attempt(_rule_cyclic, (T, field), mounted)
        attempt(_rule_rect_band, (T, field), mounted)
        if exact_hit is None:
            attempt(
                _rule_partinj,
                (_opposite(T), field),
                lambda rep: _extend_by_identity(S, embed, _transpose_onto(T, rep)),
            )

    lower.append(LowerCert(1, "nontrivial", {}))
    idem, reg = chain_lengths(work)
    if max(idem, reg) > 0:
        lower.append(
            LowerCert(
                max(idem, reg),
                "chain_length",
                {"idempotent_chain": idem, "regular_j_chain": reg},
            )
        )
    c = cornilp_bound(work)
    if c > 0:
        lower.append(LowerCert(c, "cornilp", {"index": c}))
    if flags.is_band:
        # a right regular band is the mirror of a left one; the bound carries
        # over since the two tables share their effective dimension
        side = None
        if flags.is_left_regular_band:
            side, band = "left", work
        else:
            mirror = _opposite(work)
            if classify_basic(mirror).is_left_regular_band:
                side, band = "right", mirror
        if side is not None:
            cert = lrb_lower_bound(band)
            lower.append(
                LowerCert(
                    cert["value"],
                    "lrb_support_lattice",
                    {
                        "side": side,
                        "lattice_size": cert["lattice_size"],
                        "join_irreducibles": cert["join_irreducibles"],
                        "includes_trivial": cert["includes_trivial"],
                    },
                )
            )

    wf_u = field if field is not None else Rationals()
    # an exact witness already beats the regular modules, so build the dense
    # pair only when it can still sharpen the interval (or the table is tiny)
    want_regular = exact_hit is None or work.n <= 16
    if want_regular and work.n <= opts.get("regular_cap", _REGULAR_CAP):
        try:
            full, reduced = regular_reps(S, wf_u)
        except HypothesisFailedError:
            full, reduced = _left_regular_only(S, wf_u), None
        for source, rep in (("regular", full), ("regular_reduced", reduced)):
            if rep is not None:
                upper.append(UpperWitness(rep.dim, source, _require_good(rep, source)))

    for rep in opts.get("witnesses", ()):
        if rep.S.hash_hex() != S.hash_hex():
            raise EffdimError("offered witness belongs to a different table")
        mine = _require_good(MatrixRep(S, rep.field, rep.mats), "family_witness")
        upper.append(UpperWitness(mine.dim, "family_witness", mine))

    want = opts.get("search")
    if want and exact_hit is None:
        if field is None or getattr(field, "size", None) is None:
            raise EffdimError("search refinement needs a finite field")
        sopt = want if isinstance(want, dict) else {}
        budget = int(sopt.get("budget", 10**9))
        jobs = int(sopt.get("jobs", 1))
        hi = min((w.value for w in upper), default=None)
        d_cap = sopt.get("d_max", None if hi is None else hi - 1)
        if d_cap is None:
            raise EffdimError("search needs d_max when no upper witness exists")
        if hi is not None:
            d_cap = min(d_cap, hi - 1)
        d = max(max(c.value for c in lower), 1)
        while d <= d_cap:
            stats = {}
            try:
                got = decide_dim(
                    SearchTask(S, d, field, unital=S.is_monoid()),
                    budget=budget,
                    jobs=jobs,
                    stats=stats,
                )
            except BudgetExceededError:
                break
            if got is None:
                lower.append(
                    LowerCert(
                        d + 1,
                        "search_exhausted",
                        {"dim": d, "nodes": int(stats.get("nodes", 0)), "budget": budget},
                    )
                )
                d += 1
            else:
                upper.append(UpperWitness(d, "search_witness", _require_good(got, "search")))
                break

    lo = max(c.value for c in lower)
    hi = min((w.value for w in upper), default=None)
    if hi is not None and lo > hi:
        raise EffdimError(f"certificates disagree: lower {lo} exceeds upper {hi}")

    exact = False
    value = None
    if exact_hit is not None:
        value = exact_hit[1]
        exact = True
        if not (lo <= value and (hi is None or hi == value)):
            raise EffdimError("exact rule value escaped the certified interval")
    elif hi is not None and lo == hi:
        exact, value = True, hi
    else:
        meta = opts.get("metadata")
        known = None if meta is None else meta.known_effdim_over_C
        if field is None and known is not None and hi == known and lo <= known:
            rules.append("family_metadata")
            exact, value = True, known

    return EffDimReport(S.hash_hex(), descriptor, lower, upper, exact, value, rules)


def cache_key(S, field):
    desc = json.dumps(_field_descriptor(field), sort_keys=True)
    return hashlib.sha256((S.hash_hex() + "|" + desc).encode()).hexdigest()


def _cache_path(S, field):
    root = os.environ.get("EFFDIM_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, cache_key(S, field) + ".json")


def cache_lookup(S, field):
    """A previously stored report for (table, field), or None."""
    path = _cache_path(S, field)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            return report_from_json(json.load(fh), S)
    except (EffdimError, KeyError, ValueError):
        return None


def cache_store(S, field, report):
    path = _cache_path(S, field)
    if path is None:
        return None
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(report.to_json(), fh)
    return path


_GENERIC_PRIME = 65537


def _standard_rep(S, n, field):
    """The (n-1)-dimensional reflection module of the symmetric group table.

    Basis e_i - e_{n-1} with the permutation action of each element; the
    family constructor enumerates itertools.permutations order.
    """
    from itertools import permutations

    perms = list(permutations(range(n)))
    if len(perms) != S.n:
        raise EffdimError("table is not a full symmetric group")
    mats = []
    for p in perms:
        m = Matrix.zeros(field, n - 1, n - 1)
        for j in range(n - 1):
            # image of e_j - e_{n-1} is e_{p[j]} - e_{p[n-1]}
            if p[j] != n - 1:
                m.data[p[j]][j] = field.one
            if p[n - 1] != n - 1:
                m.data[p[n - 1]][j] = field.sub(m.data[p[n - 1]][j], field.one)
        mats.append(m)
    return MatrixRep(S, field, mats)


def _family_witness(fam, field, seed):
    """Extra verified upper witness for families without an exact rule."""
    name = fam.metadata.family
    params = fam.metadata.params
    S = fam.semigroup
    if name == "S" and params["n"] >= 2:
        return _standard_rep(S, params["n"], field if field is not None else Rationals())
    if name == "F":
        res = free_lrb_effdim(params["n"], field if field is not None else Rationals())
        if res.witness.S.hash_hex() != S.hash_hex():
            raise EffdimError("free band witness built on a different element order")
        return MatrixRep(S, res.witness.field, res.witness.mats)
    if name == "sign":
        rep = sign_power_rep(params["n"], field if field is not None else Rationals())
        if rep.S.hash_hex() != S.hash_hex():
            raise EffdimError("sign witness built on a different element order")
        return MatrixRep(S, rep.field, rep.mats)
    if name in ("N", "CN"):
        kind = "free" if name == "N" else "free_commutative"
        f = field if field is not None else PrimeField(_GENERIC_PRIME)
        rep, _ = generic_nilpotent_rep(kind, params["m"], params["n"], f, seed)
        if rep.S.hash_hex() != S.hash_hex():
            raise EffdimError("nilpotent witness built on a different element order")
        return MatrixRep(S, rep.field, rep.mats)
    if name in ("path_A", "incidence_chain", "truncated_loop"):
        kind = {"path_A": "path", "incidence_chain": "incidence", "truncated_loop": "truncated"}[name]
        f = field if field is not None else PrimeField(_GENERIC_PRIME)
        rep, _ = generic_quiver_rep(kind, fam.quiver, f, seed, N=params.get("N"))
        if rep.S.hash_hex() != S.hash_hex():
            raise EffdimError("quiver witness built on a different element order")
        return MatrixRep(S, rep.field, rep.mats)
    return None


def family_options(fam, field=None, seed=0):
    """effdim_interval options carrying a family's metadata, action, witness."""
    opts = {"metadata": fam.metadata}
    if fam.action is not None:
        opts["action"] = fam.action
    wit = _family_witness(fam, field, seed)
    if wit is not None:
        opts["witnesses"] = [wit]
    return opts


@dataclass
class TableRow:
    family: str
    params: dict
    known: int | None
    computed: int | None
    status: str
    match: bool

    def to_json(self):
        return {
            "family": self.family,
            "params": self.params,
            "known": self.known,
            "computed": self.computed,
            "status": self.status,
            "match": self.match,
        }


def _table_grid(max_n):
    out = []
    for n in range(1, max_n + 1):
        out += [
            ("T", {"n": n}),
            ("PT", {"n": n}),
            ("IS", {"n": n}),
            ("S", {"n": n}),
            ("B", {"n": n}),
            ("L", {"n": n}),
            ("sign", {"n": n}),
            ("NC", {"m": n}),
            ("path_A", {"n": n}),
            ("incidence_chain", {"n": n}),
            ("truncated_loop", {"N": n}),
            ("K", {"n": n}),
        ]
    # the free band formula C(n,2)+n+1 starts at two letters
    for n in range(2, max_n + 1):
        out.append(("F", {"n": n}))
    for n in range(1, min(max_n, 2) + 1):
        for q in (2, 3):
            out += [("Mat", {"n": n, "q": q}), ("PAut", {"n": n, "q": q})]
    for m in range(2, max_n + 2):
        out.append(("Z", {"invariants": [m]}))
    if max_n >= 2:
        out.append(("Z", {"invariants": [2, 2]}))
    for m in range(1, max_n + 1):
        for n in range(1, max_n + 1):
            out.append(("R", {"m": m, "n": n}))
    for m in range(1, min(max_n, 3) + 1):
        for n in range(2, min(max_n, 3) + 1):
            out += [("N", {"m": m, "n": n}), ("CN", {"m": m, "n": n})]
    # monogenic aperiodic-part rows; m = 1 is the cyclic group, listed under Z
    for n in range(2, max_n + 2):
        for m in range(2, n + 1):
            out.append(("C", {"m": m, "n": n}))
    blocks = [[m] for m in range(2, max_n + 1)] + ([[2, 2]] if max_n >= 2 else [])
    for ms in blocks:
        out.append(("partinj", {"ms": ms}))
    for m in range(2, max_n + 1):
        for n in (1, 2):
            out += [("wreath_is", {"m": m, "n": n}), ("wreath_pt", {"m": m, "n": n})]
    return out


def report_table(max_n, field=None, seed=0):
    """Recompute the known-family rows up to max_n and compare to metadata.

    Each row is computed-exact (a rule or matching bounds settled it),
    witness-only (the registry value is met by a verified witness and the
    bracketing bounds but no rule closed it), cited-external (no table to
    compute from), upper-bound-only (truncated path rows whose cycle
    hypothesis fails), or open.  match is the row-level diff flag.
    """
    rows = []
    for name, params in _table_grid(max_n):
        try:
            fam = make_family(name, **params)
        except TooLargeError:
            continue
        known = fam.metadata.known_effdim_over_C
        if fam.semigroup is None:
            rows.append(TableRow(name, params, known, None, "cited-external", True))
            continue
        r = effdim_interval(fam.semigroup, field, family_options(fam, field, seed))
        if r.exact:
            metadata_only = bool(r.rules_fired) and r.rules_fired[-1] == "family_metadata"
            status = "witness-only" if metadata_only else "computed-exact"
            computed = r.value
        else:
            status = "open"
            computed = None
            if (
                name == "truncated_loop"
                and fam.quiver is not None
                and not fam.quiver.every_vertex_on_cycle()
            ):
                status = "upper-bound-only"
        match = (computed == known) if known is not None else (computed is None)
        rows.append(TableRow(name, params, known, computed, status, match))
    return rows


def table_diff(rows):
    return [r for r in rows if not r.match]


def table_to_json(rows):
    return {
        "rows": [r.to_json() for r in rows],
        "diff": [r.to_json() for r in table_diff(rows)],
    }
