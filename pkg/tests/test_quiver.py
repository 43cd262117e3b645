import pytest

from effdim.cayley import classify_basic
from effdim.duality import effdim_comm_inverse
from effdim.errors import (
    EffdimError,
    NotAcyclicError,
    RetriesExhaustedError,
    TooLargeError,
)
from effdim.fields import PrimeField, Rationals
from effdim.linalg import Matrix
from effdim.quiver import (
    Quiver,
    QuiverRep,
    build,
    generic_quiver_rep,
    to_matrix_rep,
)
from effdim.reps import verify

Q = Rationals()

A3 = Quiver(["1", "2", "3"], [(0, 1), (1, 2)])
LOOP = Quiver(["v"], [(0, 0)])
# Hasse diagram of the diamond poset 0 < 1,2 < 3
DIAMOND = Quiver(["0", "1", "2", "3"], [(0, 1), (0, 2), (1, 3), (2, 3)])

A3_PATH_TABLE = [
    [0, 6, 6, 3, 6, 5, 6],
    [6, 1, 6, 6, 4, 6, 6],
    [6, 6, 2, 6, 6, 6, 6],
    [6, 3, 6, 6, 5, 6, 6],
    [6, 6, 4, 6, 6, 6, 6],
    [6, 6, 5, 6, 6, 6, 6],
    [6, 6, 6, 6, 6, 6, 6],
]


def test_quiver_structure_flags():
    assert A3.acyclic
    assert A3.sccs == [(0,), (1,), (2,)]
    assert not A3.every_vertex_on_cycle()
    assert not LOOP.acyclic
    assert LOOP.every_vertex_on_cycle()
    two = Quiver(["x", "y"], [(0, 1), (1, 0)])
    assert two.sccs == [(0, 1)]
    assert not two.acyclic
    assert two.every_vertex_on_cycle()
    tail = Quiver(["x", "y", "w"], [(0, 1), (1, 0), (1, 2)])
    assert not tail.every_vertex_on_cycle()


def test_quiver_json_round_trip():
    obj = A3.to_json()
    assert obj == {
        "vertices": ["1", "2", "3"],
        "edges": [
            {"src": 0, "dst": 1, "label": "a"},
            {"src": 1, "dst": 2, "label": "b"},
        ],
    }
    back = Quiver.from_json(obj)
    assert back.edges == A3.edges and back.vertices == A3.vertices
    with pytest.raises(EffdimError):
        Quiver(["x"], [(0, 1)])


def test_poset_shorthand():
    chain = Quiver.from_poset({"relation": [[0, 1], [1, 2]]})
    assert [(s, t) for s, t, _ in chain.edges] == [(0, 1), (0, 2), (1, 2)]
    named = Quiver.from_json({"relation": [[0, 1]], "vertices": ["p", "q"]})
    assert named.edges == [(0, 1, "p<q")]
    sized = Quiver.from_poset({"relation": [[0, 1]], "vertices": 3})
    assert len(sized.vertices) == 3
    with pytest.raises(EffdimError):
        Quiver.from_poset({"relation": [[0, 0]]})
    with pytest.raises(EffdimError):
        Quiver.from_poset({"relation": [[0, 1], [1, 0]]})
    with pytest.raises(EffdimError):
        Quiver.from_poset({"relation": [[0, 2]], "vertices": 2})


def test_path_table_a3():
    S = build("path", A3)
    assert S.names == ["(1)", "(2)", "(3)", "a", "b", "ab", "z"]
    assert S.table.tolist() == A3_PATH_TABLE
    assert S.zero == 6 and not S.is_monoid()


def test_truncated_loop_table():
    T = build("truncated", LOOP, N=3)
    assert T.names == ["(v)", "a", "aa", "z"]
    assert T.table.tolist() == [
        [0, 1, 2, 3],
        [1, 2, 3, 3],
        [2, 3, 3, 3],
        [3, 3, 3, 3],
    ]
    # single vertex makes the empty path a genuine identity
    assert T.identity == 0
    flags = classify_basic(T)
    assert flags.is_commutative


def test_incidence_chain_table():
    I = build("incidence", Quiver.from_poset({"relation": [[0, 1], [1, 2]]}))
    assert I.names == ["(0)", "(1)", "(2)", "0<1", "0<2", "1<2", "z"]
    assert I.table.tolist() == [
        [0, 6, 6, 3, 4, 6, 6],
        [6, 1, 6, 6, 6, 5, 6],
        [6, 6, 2, 6, 6, 6, 6],
        [6, 3, 6, 6, 6, 4, 6],
        [6, 6, 4, 6, 6, 6, 6],
        [6, 6, 5, 6, 6, 6, 6],
        [6, 6, 6, 6, 6, 6, 6],
    ]


def test_incidence_depends_only_on_poset():
    # Hasse diagram and full relation give the same incidence table
    hasse = build("incidence", DIAMOND)
    closed = build(
        "incidence",
        Quiver(["0", "1", "2", "3"], [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
    )
    assert hasse.n == 10
    assert hasse.table.tolist() == closed.table.tolist()
    # the two routes through the diamond collapse to one element 0<3
    paths = build("path", DIAMOND)
    assert paths.n == 11


def test_build_errors():
    with pytest.raises(NotAcyclicError):
        build("path", LOOP)
    with pytest.raises(NotAcyclicError):
        build("incidence", Quiver(["x", "y"], [(0, 1), (1, 0)]))
    with pytest.raises(EffdimError):
        build("truncated", LOOP)
    with pytest.raises(EffdimError):
        build("spath", A3)
    with pytest.raises(TooLargeError):
        build("truncated", LOOP, N=5000)


def test_quiver_rep_shape_check():
    with pytest.raises(EffdimError, match="1x1"):
        QuiverRep(A3, [1, 1, 1], [Matrix.zeros(Q, 2, 2), Matrix.zeros(Q, 1, 1)])
    with pytest.raises(EffdimError, match="one map"):
        QuiverRep(A3, [1, 1, 1], [])


def test_incidence_conversion_requires_agreement():
    one = Matrix(Q, [[Q.one]])
    two = Matrix(Q, [[Q.from_int(2)]])
    qrep = QuiverRep(DIAMOND, [1, 1, 1, 1], [one, one, one, two])
    with pytest.raises(EffdimError, match="coterminous"):
        to_matrix_rep(qrep, Q, "incidence")
    ok = QuiverRep(DIAMOND, [1, 1, 1, 1], [one, one, two, two])
    rep = to_matrix_rep(ok, Q, "incidence")
    assert verify(rep).is_homomorphism


def test_generic_path_witness():
    rep, samp = generic_quiver_rep("path", A3, Q, 3)
    assert rep.dim == 3 and rep.S.n == 7
    assert samp.retries_used == 0
    chk = verify(rep)
    assert chk.is_homomorphism and chk.is_effective
    for c in samp.tuple:
        assert c.denominator == 1 and 1 <= c <= 10**6
    # empty paths act as the diagonal idempotents
    assert rep.mats[0].data == [[1, 0, 0], [0, 0, 0], [0, 0, 0]]


def test_generic_path_separates_diamond():
    rep, _ = generic_quiver_rep("path", DIAMOND, PrimeField(5), 0)
    S = build("path", DIAMOND)
    route1 = S.names.index("ac")
    route2 = S.names.index("bd")
    assert rep.mats[route1] != rep.mats[route2]


def test_generic_path_retries_exhausted():
    # over F_2 both diamond routes are forced to the all-ones scalar
    with pytest.raises(RetriesExhaustedError, match="size 2"):
        generic_quiver_rep("path", DIAMOND, PrimeField(2), 0)


def test_generic_truncated_witness():
    rep, samp = generic_quiver_rep("truncated", LOOP, Q, 3, N=3)
    assert rep.dim == 3
    chk = verify(rep)
    assert chk.is_homomorphism and chk.is_effective
    assert rep.mats[0].data == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rep.mats[rep.S.zero].is_zero()
    for B in samp.tuple:
        assert B.pow(3).is_zero()
    two = Quiver(["x", "y"], [(0, 1), (1, 0)])
    rep2, _ = generic_quiver_rep("truncated", two, Q, 1, N=2)
    assert rep2.dim == 4 and verify(rep2).is_effective


def test_generic_incidence_witness():
    chain = Quiver.from_poset({"relation": [[0, 1], [1, 2]]})
    rep, samp = generic_quiver_rep("incidence", chain, PrimeField(2), 0)
    assert rep.dim == 3 and samp.retries_used == 0
    assert rep.mats[3].data == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert verify(rep).is_effective


def _natural_posets(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if mask >> k & 1}
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield rel


def test_incidence_effective_on_all_small_posets():
    # every poset has a linear extension, so upper-triangular relations
    # cover all isomorphism types
    counts = []
    for n in range(1, 6):
        seen = 0
        for rel in _natural_posets(n):
            qv = Quiver([str(i) for i in range(n)], [(a, b) for a, b in sorted(rel)])
            rep, _ = generic_quiver_rep("incidence", qv, PrimeField(2), 0)
            chk = verify(rep)
            assert chk.is_homomorphism and chk.is_effective
            assert rep.dim == n
            seen += 1
        counts.append(seen)
    assert counts == [1, 2, 7, 40, 357]


def test_empty_path_semilattice_lower_bound():
    for quiv, n in [(A3, 3), (DIAMOND, 4)]:
        S = build("path", quiv)
        sub, _ = S.sub_table(list(range(n)) + [S.zero])
        cert = effdim_comm_inverse(sub.adjoin_identity())
        assert cert["rule"] == "lattice"
        assert cert["value"] == n
