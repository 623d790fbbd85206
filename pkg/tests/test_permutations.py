"""Reduced words, braid paths, and the place action."""

import itertools

import pytest

from klrpd import permutations as perms


def test_shortlex_basics():
    assert perms.shortlex((0, 1, 2)) == ()
    assert perms.shortlex((1, 0, 2)) == (1,)
    assert perms.shortlex((2, 1, 0)) == (1, 2, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_shortlex_is_reduced_and_minimal(n):
    for w in perms.all_perms(n):
        word = perms.shortlex(w)
        assert len(word) == perms.length(w)
        assert perms.perm_of_word(word, n) == w
        # lexicographic minimality: first letter is the smallest left descent
        if word:
            descents = [k for k in range(1, n) if perms.is_left_descent(w, k)]
            assert word[0] == min(descents)


def test_compose_and_inverse():
    for w in perms.all_perms(4):
        assert perms.compose(w, perms.inverse(w)) == perms.identity(4)
        assert perms.compose(perms.inverse(w), w) == perms.identity(4)


def test_act_on_tuple_is_place_permutation():
    # (w nu)_t = nu_{w^{-1}(t)}
    nu = ("a", "b", "c")
    w = (2, 0, 1)   # w(1)=3, w(2)=1, w(3)=2
    assert perms.act_on_tuple(w, nu) == ("b", "c", "a")
    for w in perms.all_perms(3):
        acted = perms.act_on_tuple(w, nu)
        inv = perms.inverse(w)
        assert acted == tuple(nu[inv[t]] for t in range(3))


def test_action_is_group_action():
    nu = (0, 1, 1, 2)
    for u in perms.all_perms(4):
        for v in [(1, 0, 2, 3), (0, 2, 1, 3), (3, 2, 1, 0)]:
            assert perms.act_on_tuple(
                perms.compose(u, v), nu
            ) == perms.act_on_tuple(u, perms.act_on_tuple(v, nu))


def test_transporters_match_bruteforce():
    for nu, nup in [((0, 1), (1, 0)), ((0, 0), (0, 0)), ((0, 1, 0), (0, 0, 1)),
                    ((0, 1, 2), (2, 1, 0)), ((0, 1), (0, 1))]:
        expected = sorted(
            w for w in perms.all_perms(len(nu)) if perms.act_on_tuple(w, nu) == nup
        )
        assert perms.transporters(nu, nup) == expected
    assert perms.transporters((0, 0), (0, 1)) == []
    assert perms.transporters((0,), (0, 0)) == []


def test_transporter_examples():
    assert len(perms.transporters((5, 5), (5, 5))) == 2
    assert perms.transporters((0, 1), (1, 0)) == [(1, 0)]
    assert perms.transporters((0, 1), (0, 1)) == [(0, 1)]


@pytest.mark.parametrize("m,expect", [(1, ()), (2, (1,)), (3, (1, 2, 1)),
                                      (4, (1, 2, 1, 3, 2, 1))])
def test_staircase_longest_word(m, expect):
    word = perms.longest_word_staircase(m)
    assert word == expect
    w = perms.perm_of_word(word, m)
    assert w == tuple(reversed(range(m)))
    assert perms.length(w) == len(word)


def test_staircase_offset():
    assert perms.longest_word_staircase(3, offset=2) == (3, 4, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_braid_path_connects_reduced_words(n):
    for w in perms.all_perms(n):
        canon = perms.shortlex(w)
        # walk a few reduced words of w and connect each back to canon
        words = {canon}
        frontier = [canon]
        while frontier:
            word = frontier.pop()
            for nxt, _, _ in perms._neighbors(word):
                if nxt not in words:
                    words.add(nxt)
                    frontier.append(nxt)
        for word in words:
            assert perms.perm_of_word(word, n) == w
            cur = word
            for move in perms.braid_path(word, canon):
                cur = perms.apply_move(cur, move)
            assert cur == canon
