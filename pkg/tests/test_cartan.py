"""Cartan data: axioms, pairings, the bilinear form, and the defect degree."""

import random

import pytest

from klrpd.cartan import (
    CartanError,
    DominantWeight,
    RootVector,
    affine_a,
    builtin_datum,
    content,
    datum_from_config,
    finite_type,
    parse_coord_map,
    rank_one,
    validate_datum,
)


def test_validate_rank_one():
    datum = validate_datum([[2]], [1])
    assert datum.rank == 1


def test_validate_a2_symmetric():
    datum = validate_datum([[2, -1], [-1, 2]], [1, 1])
    assert datum.a[0][1] == -1


def test_validate_rejects_nonsymmetrizable():
    with pytest.raises(CartanError, match="not symmetrizable"):
        validate_datum([[2, -2], [-1, 2]], [1, 1])


def test_validate_reports_first_violation():
    with pytest.raises(CartanError, match=r"a\[0\]\[0\]"):
        validate_datum([[1]], [1])
    with pytest.raises(CartanError, match="off the diagonal"):
        validate_datum([[2, 1], [1, 2]], [1, 1])
    with pytest.raises(CartanError, match="!= 0"):
        validate_datum([[2, 0], [-1, 2]], [1, 1])
    with pytest.raises(CartanError, match="not positive"):
        validate_datum([[2]], [0])


def test_pairing_examples():
    a2 = finite_type("A", 2)
    lam = a2.weight({"1": 1, "2": 1})
    beta = a2.root({"1": 1, "2": 1})
    # <h_1, Lambda - a_1 - a_2> = 1 - (2 - 1)
    assert a2.pairing("1", lam, beta) == 0

    r1 = rank_one()
    for ell in range(5):
        for k in range(4):
            lam = r1.weight({"0": ell})
            assert r1.pairing("0", lam, r1.root({"0": k})) == ell - 2 * k

    sl3 = affine_a(3)
    lam = sl3.weight({"0": 4})
    assert sl3.pairing("1", lam, sl3.simple_root("0")) == 1


def test_pairing_unknown_label():
    a2 = finite_type("A", 2)
    with pytest.raises(CartanError, match="unknown residue label"):
        a2.index("7")


def test_bilinear_examples():
    r1 = rank_one()
    a0 = r1.simple_root("0")
    assert r1.bilinear(a0, a0) == 2

    a2 = finite_type("A", 2)
    assert a2.bilinear(a2.simple_root("1"), a2.simple_root("2")) == -1

    # hand expansion: (a0+2a1, a0+2a1) = 2 + 4*(-1)*2 + 4*2 = 6
    sl3 = affine_a(3)
    beta = sl3.root({"0": 1, "1": 2})
    assert sl3.bilinear(beta, beta) == 6


def test_defect_degree_examples():
    sl3 = affine_a(3)
    lam = sl3.weight({"0": 4})
    assert sl3.defect_degree(lam, sl3.root({"0": 1, "1": 2})) == 2

    r1 = rank_one()
    for ell in range(6):
        for n in range(5):
            lam = r1.weight({"0": ell})
            assert r1.defect_degree(lam, r1.root({"0": n})) == 2 * ell * n - 2 * n * n

    assert sl3.defect_degree(lam, sl3.zero_root()) == 0


def test_content_examples():
    a2 = finite_type("A", 2)
    nu = a2.sequence(["1", "2", "2", "1"])
    assert content(a2, nu) == a2.root({"1": 2, "2": 2})
    assert content(a2, a2.sequence([])) == a2.zero_root()
    r1 = rank_one()
    assert content(r1, r1.sequence(["0", "0", "0"])) == r1.root({"0": 3})
    assert content(r1, r1.sequence(["0", "0", "0"])).height == 3


@pytest.mark.parametrize("name,rank", [("A", 3), ("B", 2), ("C", 3), ("D", 4),
                                       ("E", 6), ("F", 4), ("G", 2)])
def test_builtin_families_are_valid(name, rank):
    datum = finite_type(name, rank)
    # validate_datum already ran; re-validate to be explicit
    validate_datum(datum.a, datum.d, datum.labels)


@pytest.mark.parametrize("e", [2, 3, 4, 5])
def test_affine_a_valid(e):
    datum = affine_a(e)
    validate_datum(datum.a, datum.d, datum.labels)
    assert datum.labels == tuple(str(i) for i in range(e))


def test_builtin_lookup():
    assert builtin_datum("rank1").rank == 1
    assert builtin_datum("affine-a", 3).rank == 3
    assert builtin_datum("a", 2).labels == ("1", "2")
    with pytest.raises(CartanError):
        builtin_datum("nope")


def _random_root(rng, datum, bound=4):
    return RootVector(tuple(rng.randint(0, bound) for _ in range(datum.rank)))


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("G", 2),
                                   affine_a(3), finite_type("B", 2)])
def test_pairing_linear_in_beta(datum):
    rng = random.Random(11)
    lam = DominantWeight(tuple(rng.randint(0, 3) for _ in range(datum.rank)))
    for _ in range(40):
        beta = _random_root(rng, datum)
        gamma = _random_root(rng, datum)
        for i in range(datum.rank):
            lhs = datum.pairing(i, lam, beta + gamma)
            rhs = datum.pairing(i, lam, beta) + datum.pairing(i, lam, gamma) - lam.coords[i]
            assert lhs == rhs


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("G", 2),
                                   affine_a(2), affine_a(3), finite_type("C", 3)])
def test_bilinear_symmetric(datum):
    rng = random.Random(7)
    for _ in range(40):
        a = _random_root(rng, datum)
        b = _random_root(rng, datum)
        assert datum.bilinear(a, b) == datum.bilinear(b, a)


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("B", 2), affine_a(3)])
def test_bilinear_simple_root_route(datum):
    rng = random.Random(3)
    for _ in range(30):
        beta = _random_root(rng, datum)
        for i in range(datum.rank):
            expected = datum.d[i] * sum(
                datum.a[i][j] * beta.coeffs[j] for j in range(datum.rank)
            )
            assert datum.bilinear(datum.root({datum.labels[i]: 1}), beta) == expected


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("G", 2), affine_a(3)])
def test_defect_incremental_identity(datum):
    # d_{L, a+a_i} - d_{L, a} = 2 d_i <h_i, L - a> - 2 d_i, by induction on height
    rng = random.Random(5)
    for _ in range(30):
        lam = DominantWeight(tuple(rng.randint(0, 4) for _ in range(datum.rank)))
        alpha = datum.zero_root()
        assert datum.defect_degree(lam, alpha) == 0
        for _ in range(6):
            i = rng.randrange(datum.rank)
            step = datum.root({datum.labels[i]: 1})
            before = datum.defect_degree(lam, alpha)
            after = datum.defect_degree(lam, alpha + step)
            assert after - before == 2 * datum.d[i] * datum.pairing(i, lam, alpha) - 2 * datum.d[i]
            alpha = alpha + step


def test_sequences_of_lexicographic():
    a2 = finite_type("A", 2)
    alpha = a2.root({"1": 2, "2": 1})
    seqs = [nu.entries for nu in a2.sequences_of(alpha)]
    assert seqs == sorted(seqs)
    assert len(seqs) == 3


def test_config_roundtrip():
    cfg = {
        "labels": ["0", "1"],
        "cartan_matrix": [2, -2, -2, 2],
        "symmetrizers": [1, 1],
    }
    datum = datum_from_config(cfg)
    assert datum.a == ((2, -2), (-2, 2))
    echoed = datum.to_json_dict()
    assert echoed["labels"] == ["0", "1"]
    assert datum_from_config(echoed) == datum


def test_parse_coord_map():
    assert parse_coord_map("0:4,1:2") == {"0": 4, "1": 2}
    assert parse_coord_map("") == {}
    with pytest.raises(CartanError):
        parse_coord_map("0=4")


def test_negative_coordinates_rejected():
    a2 = finite_type("A", 2)
    with pytest.raises(CartanError):
        a2.weight({"1": -1})
    with pytest.raises(CartanError):
        a2.root({"1": -2})
