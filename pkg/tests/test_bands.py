import pytest

from effdim.bands import (
    faces_from_text,
    faces_to_text,
    free_lrb_effdim,
    hyperplane_effdim,
    injective_words,
    lrb_lower_bound,
    rectangular_band_effdim,
    sign_monoid,
    sign_power_rep,
    support_lattice,
)
from effdim.cayley import tables_isomorphic, validate
from effdim.errors import (
    EffdimError,
    FieldTooSmallError,
    NotClosedError,
    NotLRBError,
    TableFormatError,
    TooLargeError,
)
from effdim.fields import PrimeField, Rationals
from effdim.linalg import rank_of
from effdim.reps import verify

from oracles import (
    chain_lattice_table,
    free_lrb_table,
    powerset_join_table,
    rect_band_table,
    total_maps_table,
)

Q = Rationals()

# three concurrent lines in the plane: 1 center + 6 rays + 6 chambers
THREE_LINES = [
    (0, 0, 0),
    (1, 0, 1), (-1, 0, -1), (0, 1, -1), (0, -1, 1), (1, 1, 0), (-1, -1, 0),
    (1, 1, 1), (1, 1, -1), (-1, 1, -1), (-1, -1, -1), (-1, -1, 1), (1, -1, 1),
]


def test_support_lattice_of_sign_square():
    S, els = sign_monoid(2)
    sl = support_lattice(S)
    assert sl.lattice.n == 4
    # classes follow zero-supports: Ma is determined by where a is nonzero
    supports = [tuple(v != 0 for v in e) for e in els]
    for i in range(len(els)):
        for j in range(len(els)):
            assert (sl.sigma[i] == sl.sigma[j]) == (supports[i] == supports[j])


def test_support_lattice_of_free_lrb():
    table, _ = free_lrb_table(2)
    sl = support_lattice(validate(table))
    assert sl.lattice.n == 4
    assert tables_isomorphic(sl.lattice, validate(powerset_join_table(2))) is not None


def test_support_lattice_of_lattice_is_identity():
    L = validate(chain_lattice_table(4))
    sl = support_lattice(L)
    assert sl.sigma == (0, 1, 2, 3)
    assert sl.lattice == L


def test_support_lattice_rejects():
    with pytest.raises(NotLRBError):
        support_lattice(validate(total_maps_table(2)[0]))
    with pytest.raises(NotLRBError):
        support_lattice(validate(rect_band_table(2, 1)[0]))  # not a monoid


def test_lrb_lower_bound_values():
    S, _ = sign_monoid(2)
    cert = lrb_lower_bound(S)
    assert cert["value"] == 3
    assert cert["includes_trivial"] is True

    table, _ = free_lrb_table(2)
    cert = lrb_lower_bound(validate(table))
    assert cert["value"] == 3
    assert cert["lattice_size"] == 4

    chain = lrb_lower_bound(validate(chain_lattice_table(4)))
    assert chain["value"] == 3
    assert chain["includes_trivial"] is False
    assert chain["join_irreducibles"] == [1, 2, 3]


def test_sign_bound_is_tight():
    for n in range(1, 5):
        S, _ = sign_monoid(n)
        rep = sign_power_rep(n, Q)
        assert lrb_lower_bound(S)["value"] == n + 1 == rep.dim
        chk = verify(rep)
        assert chk.is_homomorphism and chk.is_effective


def test_sign_power_rep_frozen():
    rep = sign_power_rep(1, PrimeField(5))
    assert rep.dim == 2
    assert rep.image(0).data == [[1, 0], [0, 1]]  # all-zero vector is the identity
    assert rep.image(1).data == [[1, 0], [1, 0]]  # "+" sends the point to the sink
    assert rep.image(2).data == [[1, 0], [0, 0]]  # "-" drops the point


def test_hyperplane_boolean():
    res = hyperplane_effdim([tuple(v) for _, v in enumerate(sign_monoid(2)[1])], Q)
    assert res.value == 3
    assert res.witness.S.n == 9
    assert verify(res.witness).is_effective


def test_hyperplane_single_line():
    res = hyperplane_effdim([(0,), (1,), (-1,)], Q)
    assert res.value == 2
    assert res.witness.dim == 2


def test_hyperplane_three_lines():
    res = hyperplane_effdim(THREE_LINES, Q)
    assert res.value == 4
    assert res.witness.S.n == 13
    assert verify(res.witness).is_effective


def test_hyperplane_rejects():
    with pytest.raises(NotClosedError):
        hyperplane_effdim([(0, 0), (1, 0), (0, 1)], Q)  # missing (+,+)
    with pytest.raises(NotClosedError):
        hyperplane_effdim([(1, 0)], Q)  # no identity
    with pytest.raises(NotClosedError):
        hyperplane_effdim([], Q)


def test_faces_text_round_trip():
    text = "# boolean line\n00\n+0\n-0\n0+ # ray\n0-\n++\n+-\n-+\n--\n"
    faces = faces_from_text(text)
    assert len(faces) == 9
    assert faces[0] == (0, 0)
    assert faces_from_text(faces_to_text(faces)) == faces
    with pytest.raises(TableFormatError):
        faces_from_text("0x\n")
    with pytest.raises(TableFormatError):
        faces_from_text("00\n+\n")


def test_free_lrb_small():
    res = free_lrb_effdim(1, Q)
    assert res.value == 2
    assert res.table.n == 2

    res = free_lrb_effdim(2, Q)
    assert res.value == 4
    assert res.table.n == 5
    assert res.witness.dim == 4
    oracle, _ = free_lrb_table(2)
    assert res.table.table.tolist() == oracle
    chk = verify(res.witness)
    assert chk.is_homomorphism and chk.is_effective


def test_free_lrb_three():
    res = free_lrb_effdim(3, Q)
    assert res.value == 7
    assert res.table.n == 16
    assert res.table.table.tolist() == free_lrb_table(3)[0]
    assert verify(res.witness).is_effective


def test_free_lrb_too_large():
    with pytest.raises(TooLargeError):
        free_lrb_effdim(6, Q)
    with pytest.raises(EffdimError):
        free_lrb_effdim(0, Q)


def test_injective_words_order():
    assert injective_words(2) == [(), (0,), (1,), (0, 1), (1, 0)]


def test_rect_band_trichotomy():
    assert rectangular_band_effdim(1, 1, Q).value == 0
    assert rectangular_band_effdim(1, 3, PrimeField(5)).value == 2
    assert rectangular_band_effdim(3, 1, Q).value == 2
    assert rectangular_band_effdim(2, 2, Q).value == 3
    assert rectangular_band_effdim(2, 2, PrimeField(2)).value == 3
    assert rectangular_band_effdim(2, 3, PrimeField(3)).value == 3


def test_rect_band_witness_shape():
    res = rectangular_band_effdim(2, 2, Q)
    chk = verify(res.witness)
    assert chk.is_homomorphism and chk.is_effective
    for s in range(res.witness.S.n):
        img = res.witness.image(s)
        assert img.mul(img) == img
        assert rank_of(img) == 1


def test_rect_band_field_too_small():
    with pytest.raises(FieldTooSmallError):
        rectangular_band_effdim(3, 2, PrimeField(2))
    with pytest.raises(FieldTooSmallError):
        rectangular_band_effdim(1, 4, PrimeField(3))
