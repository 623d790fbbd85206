"""The closed graded-dimension formula and Laurent polynomial arithmetic."""

import math
import random

import pytest

from klrpd.cartan import affine_a, finite_type, rank_one
from klrpd.gdim import (
    LaurentPoly,
    graded_dim_algebra,
    graded_dim_pair,
    orbit_transporters,
    quantum_integer,
)
from klrpd.pdseq import enumerate_pd


def test_laurent_arithmetic():
    p = LaurentPoly({2: 1, 0: 1})
    q = LaurentPoly({-2: 3})
    assert (p + q).coeffs == {2: 1, 0: 1, -2: 3}
    assert (p * q).coeffs == {0: 3, -2: 3}
    assert (p - p).is_zero()
    assert p.shift(-1).coeffs == {1: 1, -1: 1}
    assert p.at_one() == 2
    assert LaurentPoly({0: 0}).is_zero()


def test_quantum_integer_examples():
    assert quantum_integer(1, 1) == LaurentPoly.one()
    assert quantum_integer(3, 1).coeffs == {-2: 1, 0: 1, 2: 1}
    assert quantum_integer(-2, 2) == -quantum_integer(2, 2)
    assert quantum_integer(0, 3).is_zero()


def test_orbit_transporter_examples():
    r1 = rank_one()
    nu = r1.sequence(["0", "0"])
    assert len(orbit_transporters(nu, nu)) == 2
    a2 = finite_type("A", 2)
    assert orbit_transporters(a2.sequence(["1", "2"]), a2.sequence(["2", "1"])) == [(1, 0)]
    assert orbit_transporters(a2.sequence(["1", "2"]), a2.sequence(["1", "2"])) == [(0, 1)]


def test_pair_rank_one_single_strand():
    # dim_q e(i) R^L e(i) must be the graded dimension of K[x]/x^ell
    r1 = rank_one()
    nu = r1.sequence(["0"])
    for ell in range(1, 5):
        lam = r1.weight({"0": ell})
        poly = graded_dim_pair(r1, lam, nu, nu)
        assert poly.coeffs == {2 * k: 1 for k in range(ell)}


def test_pair_nh_2_2():
    # two-permutation sum evaluated by hand: q^-2 + 2 + q^2
    r1 = rank_one()
    lam = r1.weight({"0": 2})
    nu = r1.sequence(["0", "0"])
    assert graded_dim_pair(r1, lam, nu, nu).coeffs == {-2: 1, 0: 2, 2: 1}


def test_pair_detects_nonzero_idempotent():
    a2 = finite_type("A", 2)
    lam = a2.weight({"1": 1, "2": 1})
    nu = a2.sequence(["2", "1", "2"])
    assert not graded_dim_pair(a2, lam, nu, nu).is_zero()


def test_pair_content_mismatch_is_zero():
    a2 = finite_type("A", 2)
    lam = a2.weight({"1": 1, "2": 1})
    assert graded_dim_pair(
        a2, lam, a2.sequence(["1", "1"]), a2.sequence(["1", "2"])
    ).is_zero()


def test_pair_bound():
    r1 = rank_one()
    lam = r1.weight({"0": 9})
    nu = r1.sequence(["0"] * 9)
    with pytest.raises(ValueError, match="bound"):
        graded_dim_pair(r1, lam, nu, nu)
    graded_dim_pair(r1, lam, nu, nu, permutation_bound=9)


def test_algebra_trivial_and_vanishing():
    a2 = finite_type("A", 2)
    lam = a2.weight({"1": 1, "2": 1})
    assert graded_dim_algebra(a2, lam, a2.zero_root()) == LaurentPoly.one()

    sl3 = affine_a(3)
    assert graded_dim_algebra(
        sl3, sl3.weight({"0": 4}), sl3.root({"0": 1, "1": 2})
    ).is_zero()


@pytest.mark.parametrize("n,ell", [(1, 1), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3)])
def test_nilhecke_total_dimension(n, ell):
    # independent oracle: dim NH_n^ell = (n!)^2 * C(ell, n)
    r1 = rank_one()
    lam = r1.weight({"0": ell})
    poly = graded_dim_algebra(r1, lam, r1.root({"0": n}))
    assert poly.at_one() == math.factorial(n) ** 2 * math.comb(ell, n)
    assert all(c >= 0 for c in poly.coeffs.values())


def test_algebra_equals_pair_sum():
    a2 = finite_type("A", 2)
    lam = a2.weight({"1": 2, "2": 1})
    alpha = a2.root({"1": 1, "2": 2})
    total = LaurentPoly.zero()
    seqs = list(a2.sequences_of(alpha))
    for nu in seqs:
        for nup in seqs:
            total = total + graded_dim_pair(a2, lam, nu, nup)
    assert total == graded_dim_algebra(a2, lam, alpha)


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("B", 2), affine_a(2)])
def test_transpose_symmetry_and_nonnegativity(datum):
    rng = random.Random(17)
    lam = datum.weight({datum.labels[0]: 2, datum.labels[1]: 1})
    for h in range(1, 5):
        for alpha in datum.roots_of_height(h):
            seqs = list(datum.sequences_of(alpha))
            for _ in range(min(5, len(seqs) ** 2)):
                nu, nup = rng.choice(seqs), rng.choice(seqs)
                p1 = graded_dim_pair(datum, lam, nu, nup)
                assert p1 == graded_dim_pair(datum, lam, nup, nu)
                assert all(c >= 0 for c in p1.coeffs.values())


@pytest.mark.parametrize("datum", [finite_type("A", 2), finite_type("G", 2), affine_a(2)])
def test_vanishing_iff_no_pd_sequence(datum):
    lam = datum.weight({datum.labels[0]: 2})
    for h in range(5):
        for alpha in datum.roots_of_height(h):
            has_pd = next(iter(enumerate_pd(datum, lam, alpha)), None) is not None
            vanishes = graded_dim_algebra(datum, lam, alpha).is_zero()
            assert has_pd == (not vanishes)
