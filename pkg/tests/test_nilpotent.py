from fractions import Fraction

import pytest

from effdim.cayley import classify_basic, validate
from effdim.errors import (
    EffdimError,
    HypothesisFailedError,
    RetriesExhaustedError,
    TooLargeError,
)
from effdim.fields import PrimeField, Rationals
from effdim.linalg import Matrix
from effdim.nilpotent import (
    cornilp_bound,
    cyclic_effdim,
    cyclic_semigroup_table,
    free_comm_nilpotent_table,
    free_nilpotent_table,
    generic_nilpotent_rep,
    partinj_effdim,
)
from effdim.reps import verify
from oracles import (
    chain_lattice_table,
    cyclic_table,
    group_table,
    nc_table,
    rect_band_table,
    total_maps_table,
)

Q = Rationals()


def test_cornilp_values():
    assert cornilp_bound(validate(cyclic_table(3, 1))) == 3  # N_{1,3}
    assert cornilp_bound(validate(cyclic_table(2, 3))) == 1  # C_{2,4}
    assert cornilp_bound(validate(rect_band_table(2, 2)[0])) == 1
    assert cornilp_bound(validate(chain_lattice_table(3))) == 1
    assert cornilp_bound(validate(total_maps_table(2)[0])) == 1
    # groups have no eventually idempotent non-identity elements
    assert cornilp_bound(validate(group_table([4])[0])) == 0
    assert cornilp_bound(validate(chain_lattice_table(1))) == 0


def test_free_nilpotent_table():
    N13 = free_nilpotent_table(1, 3)
    assert N13.names == ["a", "aa", "z"]
    assert N13.table.tolist() == cyclic_table(3, 1)

    N23 = free_nilpotent_table(2, 3)
    assert N23.names == ["a", "b", "aa", "ab", "ba", "bb", "z"]
    assert N23.zero == 6
    assert not N23.is_monoid()
    assert N23.mul(0, 1) == 3
    assert N23.mul(3, 0) == 6  # aba has length 3
    flags = classify_basic(N23)
    assert flags.is_nilpotent and flags.nilpotency_index == 3
    assert not flags.is_commutative


def test_free_comm_nilpotent_table():
    C = free_comm_nilpotent_table(2, 3)
    assert C.names == ["a", "b", "a2", "ab", "b2", "z"]
    assert C.mul(0, 1) == C.mul(1, 0) == 3
    assert C.mul(0, 2) == 5
    flags = classify_basic(C)
    assert flags.is_commutative and flags.is_nilpotent
    names4 = free_comm_nilpotent_table(2, 4).names
    assert names4 == ["a", "b", "a2", "ab", "b2", "a3", "a2b", "ab2", "b3", "z"]


def test_table_builder_bounds():
    for bad in [(0, 3), (2, 1)]:
        with pytest.raises(EffdimError):
            free_nilpotent_table(*bad)
        with pytest.raises(EffdimError):
            free_comm_nilpotent_table(*bad)
    with pytest.raises(TooLargeError):
        free_nilpotent_table(8, 5)


def test_generic_free_over_q():
    rep, samp = generic_nilpotent_rep("free", 2, 3, Q, 7)
    assert rep.dim == 3 and rep.S.n == 7
    assert samp.retries_used == 0 and samp.seed == 7
    res = verify(rep)
    assert res.is_homomorphism and res.is_effective
    for mat in samp.tuple:
        for i in range(3):
            for j in range(3):
                v = mat.data[i][j]
                if j <= i:
                    assert v == 0
                else:
                    assert v.denominator == 1 and 1 <= v <= 10**6


def test_generic_images_nilpotent():
    for kind, m, n, f in [
        ("free", 2, 3, Q),
        ("free", 1, 2, PrimeField(2)),
        ("free_commutative", 2, 3, Q),
        ("free_commutative", 2, 3, PrimeField(7)),
    ]:
        rep, _ = generic_nilpotent_rep(kind, m, n, f, 5)
        assert rep.mats[rep.S.zero].is_zero()
        for mat in rep.mats:
            assert mat.pow(n).is_zero()


def test_generic_free_tiny_field():
    # the only nonzero strictly upper 2x2 over F_2
    rep, samp = generic_nilpotent_rep("free", 1, 2, PrimeField(2), 1)
    assert rep.mats[0].data == [[0, 1], [0, 0]]
    assert samp.retries_used == 2


def test_generic_retries_exhausted():
    # F_2 has one nonzero strictly upper 2x2, but N_{2,2} needs two distinct
    with pytest.raises(RetriesExhaustedError, match="size 2"):
        generic_nilpotent_rep("free", 2, 2, PrimeField(2), 0)


def test_generic_comm_primes_over_q():
    rep, samp = generic_nilpotent_rep("free_commutative", 2, 3, Q, 0)
    assert samp.tuple == [Fraction(2), Fraction(3)]
    assert samp.retries_used == 0
    assert rep.mats[0].data == [
        [0, 2, 0],
        [0, 0, 2],
        [0, 0, 0],
    ]
    assert rep.mats[1].data == [
        [0, 3, 0],
        [0, 0, 3],
        [0, 0, 0],
    ]


def test_comm_prime_construction_separates_words():
    # distinct words into distinct matrices, exhaustively at small sizes
    for m in range(1, 4):
        for n in range(2, 5):
            rep, samp = generic_nilpotent_rep("free_commutative", m, n, Q, 0)
            assert samp.retries_used == 0
            flat = [tuple(mat.flat()) for mat in rep.mats]
            assert len(set(flat)) == rep.S.n


def test_generic_big_prime_field():
    rep, samp = generic_nilpotent_rep("free", 3, 4, PrimeField(65537), 11)
    assert samp.retries_used <= 32
    assert verify(rep).is_effective


def test_generic_sample_json():
    _, samp = generic_nilpotent_rep("free_commutative", 2, 3, Q, 0)
    obj = samp.to_json()
    assert obj["seed"] == 0 and obj["retries_used"] == 0
    assert obj["field"] == {"kind": "Q"}
    assert obj["tuple"] == ["2/1", "3/1"]
    _, samp2 = generic_nilpotent_rep("free", 1, 2, PrimeField(2), 1)
    obj2 = samp2.to_json()
    assert obj2["tuple"][0]["entries"] == [[0, 1], [0, 0]]


def test_generic_rejects_bad_args():
    with pytest.raises(EffdimError):
        generic_nilpotent_rep("fre", 2, 3, Q, 0)
    with pytest.raises(EffdimError):
        generic_nilpotent_rep("free", 2, 1, Q, 0)


def test_partinj_nc2():
    table, _ = nc_table(2)
    res = partinj_effdim(validate(table))
    assert res.value == 4
    assert res.witness.dim == 4
    chk = verify(res.witness)
    assert chk.is_homomorphism and chk.is_effective


def test_partinj_n13_witness():
    S = validate(cyclic_table(3, 1))
    res = partinj_effdim(S)
    assert res.value == 3
    # basis x, x^2, 1: x sends x to x^2, 1 to x; x^2 and z act by less
    assert res.witness.mats[0].data == [
        [0, 0, 1],
        [1, 0, 0],
        [0, 0, 0],
    ]
    assert res.witness.mats[2].is_zero()


def test_partinj_over_f2():
    table, _ = nc_table(2)
    res = partinj_effdim(validate(table), field=PrimeField(2))
    assert res.value == 4
    assert verify(res.witness).is_effective


def test_partinj_rejects_non_nilpotent():
    with pytest.raises(HypothesisFailedError, match="nilpotent"):
        partinj_effdim(validate(total_maps_table(2)[0]))


def test_partinj_rejects_many_annihilated():
    # N_{2,3}: all four length-2 words are killed by everything
    with pytest.raises(HypothesisFailedError, match="exactly one"):
        partinj_effdim(free_nilpotent_table(2, 3))


def test_partinj_rejects_collision():
    # s*t1 = s*t2 = u nonzero, everything else z
    t = [
        [4, 3, 3, 4, 4],
        [4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4],
    ]
    with pytest.raises(HypothesisFailedError, match="partial injective"):
        partinj_effdim(validate(t))


def test_cyclic_table_convention():
    assert cyclic_semigroup_table(2, 4).table.tolist() == cyclic_table(2, 3)
    assert cyclic_semigroup_table(3, 3).table.tolist() == cyclic_table(3, 1)
    Z4 = cyclic_semigroup_table(1, 4)
    assert Z4.identity == 3
    assert Z4.names == ["x", "x2", "x3", "x4"]


def test_cyclic_effdim_values():
    cases = {(2, 4): (3, 7), (3, 3): (3, 2), (1, 4): (2, 5), (2, 2): (2, 2)}
    for (m, n), (value, p) in cases.items():
        res = cyclic_effdim(m, n)
        assert res.value == value
        assert res.field.p == p
        assert res.witness.dim == value
        chk = verify(res.witness)
        assert chk.is_homomorphism and chk.is_effective


def test_cyclic_witness_frozen():
    assert cyclic_effdim(2, 4).witness.mats[0].data == [
        [0, 1, 0],
        [0, 0, 0],
        [0, 0, 2],
    ]
    assert cyclic_effdim(1, 4).witness.mats[0].data == [[1, 0], [0, 2]]


def test_cyclic_power_relations():
    for m, n in [(2, 4), (3, 3), (1, 4), (4, 7)]:
        res = cyclic_effdim(m, n)
        gen = res.witness.mats[0]
        powers = [tuple(gen.pow(k).flat()) for k in range(1, n + 1)]
        assert len(set(powers)) == n
        assert gen.pow(n + 1) == gen.pow(m)
        assert res.witness.mats == [gen.pow(k) for k in range(1, n + 1)]


def test_cyclic_trivial_monoid():
    res = cyclic_effdim(1, 1)
    assert res.value == 1
    assert res.witness.mats[0].data == [[1]]


def test_cyclic_rejects_bad_pairs():
    for m, n in [(3, 2), (0, 1)]:
        with pytest.raises(EffdimError):
            cyclic_effdim(m, n)


def test_cornilp_below_witness_dims():
    assert cornilp_bound(validate(cyclic_table(3, 1))) <= 3
    S = cyclic_semigroup_table(2, 4)
    assert cornilp_bound(S) <= cyclic_effdim(2, 4).value
    rep, _ = generic_nilpotent_rep("free_commutative", 2, 3, Q, 0)
    assert cornilp_bound(rep.S) <= rep.dim
