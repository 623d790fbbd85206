"""Piecewise dominance: decompositions, the witness criterion, enumeration,
and the explicit Z(nu) / S(nu) data."""

import itertools

import pytest

from klrpd.cartan import Sequence, affine_a, content, finite_type, rank_one
from klrpd.pdseq import (
    check_via_criterion,
    enumerate_pd,
    is_piecewise_dominant,
    run_decompose,
    s_word,
    weight_nonzero,
    z_monomial,
)

A2 = finite_type("A", 2)
RHO = A2.weight({"1": 1, "2": 1})
R1 = rank_one()
SL3 = affine_a(3)


def test_run_decompose_example():
    nu = A2.sequence(["2", "1", "1", "2"])
    dec = run_decompose(A2, RHO, nu)
    assert [(A2.labels[r], b) for r, b in dec.runs] == [("2", 1), ("1", 2), ("2", 1)]
    assert dec.cuts == (0, 1, 3, 4)
    assert dec.ells == (1, 2, 1)


def test_run_decompose_empty_and_single_run():
    assert run_decompose(A2, RHO, Sequence(())).p == 0
    for ell in range(1, 4):
        lam = R1.weight({"0": ell})
        dec = run_decompose(R1, lam, R1.sequence(["0", "0", "0"]))
        assert dec.runs == ((0, 3),)
        assert dec.ells == (ell,)


def test_pd_rank_one_iff_ell_ge_n():
    for ell in range(1, 9):
        lam = R1.weight({"0": ell})
        for n in range(1, 9):
            nu = Sequence((0,) * n)
            assert is_piecewise_dominant(R1, lam, nu) == (ell >= n)


def test_pd_a2_examples():
    assert not is_piecewise_dominant(A2, RHO, A2.sequence(["2", "1", "2"]))
    assert is_piecewise_dominant(A2, RHO, A2.sequence(["1", "2", "2", "1"]))
    assert is_piecewise_dominant(A2, RHO, Sequence(()))


@pytest.mark.parametrize("datum,lam_map", [
    (A2, {"1": 1, "2": 1}),
    (R1, {"0": 3}),
    (finite_type("B", 2), {"1": 2, "2": 1}),
    (SL3, {"0": 2}),
])
def test_criterion_agrees_with_direct_test(datum, lam_map):
    lam = datum.weight(lam_map)
    for n in range(7):
        for entries in itertools.product(range(datum.rank), repeat=n):
            nu = Sequence(entries)
            direct = is_piecewise_dominant(datum, lam, nu)
            via, witness = check_via_criterion(datum, lam, nu)
            assert direct == via
            if via:
                dec = run_decompose(datum, lam, nu)
                assert witness is not None
                for k_i, c_prev, c_i in zip(witness.ks, dec.cuts, dec.cuts[1:]):
                    assert c_prev + 1 <= k_i <= c_i
                    # the witness position satisfies the stated inequality
                    prefix = content(datum, nu.prefix(k_i - 1))
                    res = nu.entries[k_i - 1]
                    assert datum.pairing(res, lam, prefix) >= c_i - k_i + 1


def test_witness_branch_examples():
    lam3 = R1.weight({"0": 3})
    ok, wit = check_via_criterion(R1, lam3, Sequence((0, 0)))
    assert ok and wit.ks == (2,)       # ell - 2b = -1: second branch
    lam5 = R1.weight({"0": 5})
    ok, wit = check_via_criterion(R1, lam5, Sequence((0, 0)))
    assert ok and wit.ks == (2,)       # ell - 2b = 1: first branch, k = c_1


def test_enumerate_pd_paper_list():
    expected = {
        (0, 0): [""],
        (1, 0): ["1"],
        (0, 1): ["2"],
        (1, 1): ["12", "21"],
        (1, 2): ["122"],
        (2, 1): ["211"],
        (2, 2): ["2112", "1221"],
    }
    found = {}
    for h in range(5):
        for alpha in A2.roots_of_height(h):
            pds = ["".join(A2.labels_of(nu)) for nu in enumerate_pd(A2, RHO, alpha)]
            if pds:
                found[alpha.coeffs] = pds
    assert {k: sorted(v) for k, v in found.items()} == {
        k: sorted(v) for k, v in expected.items()
    }
    assert sum(len(v) for v in found.values()) == 9


def test_enumerate_pd_lexicographic_and_unique():
    for h in range(5):
        for alpha in A2.roots_of_height(h):
            seqs = [nu.entries for nu in enumerate_pd(A2, RHO, alpha)]
            assert seqs == sorted(set(seqs))


def test_enumerate_pd_empty_for_vanishing_example():
    lam = SL3.weight({"0": 4})
    assert list(enumerate_pd(SL3, lam, SL3.root({"0": 1, "1": 2}))) == []


def test_prefix_closure_exhaustive():
    for datum, lam_map in [(A2, {"1": 1, "2": 1}), (SL3, {"0": 2, "1": 1})]:
        lam = datum.weight(lam_map)
        for n in range(1, 6):
            for entries in itertools.product(range(datum.rank), repeat=n):
                nu = Sequence(entries)
                if is_piecewise_dominant(datum, lam, nu):
                    for k in range(n):
                        assert is_piecewise_dominant(datum, lam, nu.prefix(k))


def test_weight_nonzero():
    lam = SL3.weight({"0": 4})
    ok, witness = weight_nonzero(SL3, lam, SL3.root({"0": 1, "1": 2}))
    assert not ok and witness is None
    assert SL3.defect_degree(lam, SL3.root({"0": 1, "1": 2})) == 2  # d > 0 yet zero

    ok, witness = weight_nonzero(A2, RHO, A2.zero_root())
    assert ok and witness == Sequence(())

    ok, witness = weight_nonzero(A2, RHO, A2.root({"1": 1, "2": 2}))
    assert ok and A2.labels_of(witness) == ("1", "2", "2")


def test_z_monomial_rank_one_descending():
    for n in range(1, 4):
        for ell in range(2 * n, 2 * n + 3):
            lam = R1.weight({"0": ell})
            zm = z_monomial(R1, lam, Sequence((0,) * n))
            assert zm.exponents == tuple(ell - 1 - 2 * j for j in range(n))
            assert zm.degree == 2 * ell * n - 2 * n * n


def test_z_monomial_tight_run_is_idempotent():
    lam = R1.weight({"0": 2})
    zm = z_monomial(R1, lam, Sequence((0, 0)))
    assert zm.exponents == (1, 0)
    zm = z_monomial(R1, R1.weight({"0": 3}), Sequence((0, 0, 0)))
    assert zm.exponents == (0, 0, 0)
    assert zm.degree == 0


def test_z_monomial_truncated_branch():
    # ell = 3, b = 2: b < ell <= 2b - 1 is the truncated branch
    lam = R1.weight({"0": 3})
    zm = z_monomial(R1, lam, Sequence((0, 0)))
    assert zm.exponents == (2, 0)
    assert zm.degree == 4


def test_z_monomial_a2_degree_zero():
    zm = z_monomial(A2, RHO, A2.sequence(["1", "2"]))
    assert zm.exponents == (0, 0)
    assert zm.degree == 0 == A2.defect_degree(RHO, A2.root({"1": 1, "2": 1}))


def test_z_rejects_non_pd():
    with pytest.raises(ValueError):
        z_monomial(A2, RHO, A2.sequence(["2", "1", "2"]))
    with pytest.raises(ValueError):
        s_word(A2, RHO, A2.sequence(["2", "1", "2"]))


def test_degree_law_over_sweep():
    for datum, lam_map in [(A2, {"1": 2, "2": 2}), (SL3, {"0": 3}), (R1, {"0": 4})]:
        lam = datum.weight(lam_map)
        for h in range(5):
            for alpha in datum.roots_of_height(h):
                for nu in enumerate_pd(datum, lam, alpha):
                    assert z_monomial(datum, lam, nu).degree == datum.defect_degree(lam, alpha)
                    assert s_word(datum, lam, nu).degree == datum.defect_degree(lam, alpha)


def test_s_word_singleton_runs():
    sw = s_word(A2, RHO, A2.sequence(["1", "2"]))
    assert sw.tau_word() == ()
    assert sw.x_exponents() == (0, 0)   # ell_i - 1 = 0 per run


def test_s_word_rank_one_examples():
    sw = s_word(R1, R1.weight({"0": 3}), Sequence((0, 0)))
    assert sw.tau_word() == (1,)
    assert sw.x_exponents() == (2, 1)
    sw = s_word(R1, R1.weight({"0": 2}), Sequence((0, 0)))
    assert sw.tau_word() == (1,)
    assert sw.x_exponents() == (1, 0)


def test_s_word_nonnegative_exponents():
    for h in range(5):
        for alpha in A2.roots_of_height(h):
            for nu in enumerate_pd(A2, RHO, alpha):
                assert all(e >= 0 for e in s_word(A2, RHO, nu).x_exponents())
