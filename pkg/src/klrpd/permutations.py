"""Symmetric group combinatorics: one-line notation, reduced words, braid paths.

Permutations are tuples ``w`` with ``w[t] = w(t+1) - 1`` (0-based one-line
notation).  Coxeter letters are 1-based: letter ``k`` is the transposition
``s_k`` of positions ``k, k+1``.  The canonical reduced word of a
permutation is the lexicographically smallest one ("shortlex"); this choice
is shared by the graded-dimension formula and the rewriting engine so that
``tau_w`` indexing agrees across modules.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Word = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(x: Perm, y: Perm) -> Perm:
    """(x y)(t) = x(y(t)); applies y first."""
    return tuple(x[j] for j in y)


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for t, v in enumerate(w):
        inv[v] = t
    return tuple(inv)


def length(w: Perm) -> int:
    """Inversion count; O(n^2) is fine at the sizes used here."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def letter_perm(n: int, k: int) -> Perm:
    """The transposition s_k as a permutation of 0..n-1."""
    p = list(range(n))
    p[k - 1], p[k] = p[k], p[k - 1]
    return tuple(p)


def left_mul_letter(k: int, w: Perm) -> Perm:
    """s_k w: swap the values k-1, k in one-line notation."""
    return tuple(k if v == k - 1 else (k - 1 if v == k else v) for v in w)


def is_left_descent(w: Perm, k: int) -> bool:
    """True iff l(s_k w) < l(w): value k-1 appears after value k."""
    return w.index(k - 1) > w.index(k)


@lru_cache(maxsize=None)
def shortlex(w: Perm) -> Word:
    """Lexicographically smallest reduced word of ``w``.

    >>> shortlex((1, 0, 2))
    (1,)
    >>> shortlex((2, 1, 0))
    (1, 2, 1)
    """
    word: list[int] = []
    cur = w
    n = len(w)
    while True:
        for k in range(1, n):
            if is_left_descent(cur, k):
                word.append(k)
                cur = left_mul_letter(k, cur)
                break
        else:
            return tuple(word)


def perm_of_word(word: Sequence[int], n: int) -> Perm:
    w = identity(n)
    for k in reversed(word):
        w = left_mul_letter(k, w)
    return w


def act_on_tuple(w: Perm, seq: tuple) -> tuple:
    """The place action ``(w seq)_t = seq_{w^{-1}(t)}``."""
    out = list(seq)
    for j, v in enumerate(w):
        out[v] = seq[j]
    return tuple(out)


def swap_positions(seq: tuple, k: int) -> tuple:
    """s_k acting on a sequence: exchange entries k, k+1 (1-based)."""
    lst = list(seq)
    lst[k - 1], lst[k] = lst[k], lst[k - 1]
    return tuple(lst)


def all_perms(n: int) -> Iterator[Perm]:
    return itertools.permutations(range(n))


def transporters(nu: tuple, nu_prime: tuple) -> list[Perm]:
    """All w with ``w nu = nu_prime``; empty if the contents differ.

    Enumerated as products of bijections between equal-residue position
    classes, so the cost is the product of class factorials rather than n!.
    """
    if len(nu) != len(nu_prime):
        return []
    positions: dict = {}
    targets: dict = {}
    for t, r in enumerate(nu):
        positions.setdefault(r, []).append(t)
    for t, r in enumerate(nu_prime):
        targets.setdefault(r, []).append(t)
    if set(positions) != set(targets):
        return []
    if any(len(positions[r]) != len(targets[r]) for r in positions):
        return []
    residues = sorted(positions, key=repr)
    out: list[Perm] = []
    pos_lists = [positions[r] for r in residues]
    for images in itertools.product(*(itertools.permutations(targets[r]) for r in residues)):
        w = [0] * len(nu)
        for src_list, img_list in zip(pos_lists, images):
            for s, t in zip(src_list, img_list):
                w[s] = t
        out.append(tuple(w))
    out.sort()
    return out


def longest_word_staircase(m: int, offset: int = 0) -> Word:
    """The fixed reduced word s_1 (s_2 s_1) ... (s_{m-1} ... s_1) for the
    longest element of S_m, shifted by ``offset`` letters.

    >>> longest_word_staircase(3)
    (1, 2, 1)
    >>> longest_word_staircase(3, offset=2)
    (3, 4, 3)
    """
    word: list[int] = []
    for j in range(2, m + 1):
        word.extend(range(j - 1, 0, -1))
    return tuple(k + offset for k in word)


# -- braid moves ---------------------------------------------------------------

def _neighbors(word: Word) -> Iterator[tuple[Word, int, str]]:
    """Words one braid move away, with the move position and kind."""
    for pos in range(len(word) - 1):
        a, b = word[pos], word[pos + 1]
        if abs(a - b) > 1:
            yield word[:pos] + (b, a) + word[pos + 2:], pos, "comm"
    for pos in range(len(word) - 2):
        a, b, c = word[pos], word[pos + 1], word[pos + 2]
        if a == c and abs(a - b) == 1:
            yield word[:pos] + (b, a, b) + word[pos + 3:], pos, "yb"


@lru_cache(maxsize=None)
def braid_path(start: Word, target: Word) -> tuple[tuple[str, int], ...]:
    """A sequence of (kind, position) braid moves taking ``start`` to ``target``.

    Both inputs must be reduced words of the same permutation; Matsumoto's
    theorem guarantees the BFS succeeds.
    """
    if start == target:
        return ()
    seen = {start: None}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for nxt, pos, kind in _neighbors(word):
            if nxt in seen:
                continue
            seen[nxt] = (word, kind, pos)
            if nxt == target:
                moves: list[tuple[str, int]] = []
                cur = nxt
                while seen[cur] is not None:
                    prev, k, p = seen[cur]
                    moves.append((k, p))
                    cur = prev
                return tuple(reversed(moves))
            queue.append(nxt)
    raise ValueError(f"no braid path between {start} and {target}")


def apply_move(word: Word, move: tuple[str, int]) -> Word:
    kind, pos = move
    if kind == "comm":
        return word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
    a, b = word[pos], word[pos + 1]
    return word[:pos] + (b, a, b) + word[pos + 3:]
