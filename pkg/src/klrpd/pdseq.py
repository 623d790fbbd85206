"""Piecewise dominant sequences: tests, enumeration, and the Z/S constructors.

A sequence ``nu`` decomposes uniquely into maximal constant runs
``(nu^1)^{b_1} ... (nu^p)^{b_p}`` with ``nu^i != nu^{i+1}``.  Writing
``c_i = b_1 + ... + b_i`` and

    ell_i = <h_{nu^i}, Lambda - (content of the first c_{i-1} entries)>,

``nu`` is piecewise dominant when ``ell_i >= b_i`` for every run.  The
equivalent witness criterion asks, per run, for a position ``k'`` in the
run with ``<h_{nu_{k'}}, Lambda - prefix content> >= c_i - k' + 1``; on
success the maximal witness is ``c_i`` when ``ell_i >= 2 b_i`` and
``ell_i + 2 c_{i-1} - c_i + 1`` otherwise.

Piecewise dominance is closed under prefixes, which justifies the pruned
depth-first enumeration below: a sequence extends to a PD sequence only
through PD prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cartan import CartanDatum, DominantWeight, RootVector, Sequence, content
from .permutations import longest_word_staircase


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal-run data of a sequence, with ells relative to a weight."""

    runs: tuple[tuple[int, int], ...]   # (residue index, length b_i)
    cuts: tuple[int, ...]               # 0 = c_0 < c_1 < ... < c_p = n
    ells: tuple[int, ...]               # ell_i per run

    @property
    def p(self) -> int:
        return len(self.runs)


@dataclass(frozen=True)
class PDWitness:
    """Maximal witness positions k_i, one per run (1-based)."""

    ks: tuple[int, ...]


@dataclass(frozen=True)
class ZMonomial:
    """Exponent vector of the top-degree cocenter generator Z(nu)."""

    exponents: tuple[int, ...]
    degree: int


@dataclass(frozen=True)
class SWord:
    """Structured word for S(nu): per run, a fixed longest-element word on
    the run's window followed by x-exponents ell_i - 1, ..., ell_i - b_i."""

    blocks: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    degree: int

    def tau_word(self) -> tuple[int, ...]:
        out: list[int] = []
        for word, _ in self.blocks:
            out.extend(word)
        return tuple(out)

    def x_exponents(self) -> tuple[int, ...]:
        out: list[int] = []
        for _, exps in self.blocks:
            out.extend(exps)
        return tuple(out)


def run_decompose(datum: CartanDatum, lam: DominantWeight, nu: Sequence) -> RunDecomposition:
    """Maximal-run decomposition with ells; the empty sequence has p = 0."""
    runs: list[tuple[int, int]] = []
    for res in nu.entries:
        if runs and runs[-1][0] == res:
            runs[-1] = (res, runs[-1][1] + 1)
        else:
            runs.append((res, 1))
    cuts = [0]
    for _, b in runs:
        cuts.append(cuts[-1] + b)
    ells = []
    prefix = [0] * datum.rank
    for idx, (res, b) in enumerate(runs):
        ells.append(datum.pairing(res, lam, RootVector(tuple(prefix))))
        prefix[res] += b
    return RunDecomposition(tuple(runs), tuple(cuts), tuple(ells))


def is_piecewise_dominant(datum: CartanDatum, lam: DominantWeight, nu: Sequence) -> bool:
    """True iff every run satisfies ell_i >= b_i; () is piecewise dominant."""
    dec = run_decompose(datum, lam, nu)
    return all(ell >= b for (_, b), ell in zip(dec.runs, dec.ells))


def check_via_criterion(
    datum: CartanDatum, lam: DominantWeight, nu: Sequence
) -> tuple[bool, PDWitness | None]:
    """Witness-position criterion, equivalent to the run-length test.

    Returns (True, maximal witnesses) or (False, None).
    """
    dec = run_decompose(datum, lam, nu)
    prefix = [0] * datum.rank
    pos = 0
    for (res, b), c_prev, c_i in zip(dec.runs, dec.cuts, dec.cuts[1:]):
        found = False
        walk = list(prefix)
        for k in range(c_prev + 1, c_i + 1):
            value = datum.pairing(res, lam, RootVector(tuple(walk)))
            if value >= c_i - k + 1:
                found = True
                break
            walk[res] += 1
        if not found:
            return False, None
        prefix[res] += b
        pos = c_i
    assert pos == len(nu) or not nu.entries
    ks = []
    for (res, b), ell, c_prev, c_i in zip(dec.runs, dec.ells, dec.cuts, dec.cuts[1:]):
        ks.append(c_i if ell - 2 * b >= 0 else ell + 2 * c_prev - c_i + 1)
    return True, PDWitness(tuple(ks))


def enumerate_pd(
    datum: CartanDatum, lam: DominantWeight, alpha: RootVector
) -> Iterator[Sequence]:
    """All piecewise dominant sequences in I^alpha, lexicographically.

    Depth-first search extending PD prefixes only; completeness rests on
    prefix closure, which the test suite re-checks exhaustively.
    """
    n = alpha.height
    if n == 0:
        yield Sequence(())
        return

    entries: list[int] = []
    remaining = list(alpha.coeffs)
    prefix_content = [0] * datum.rank

    def extend() -> Iterator[Sequence]:
        if len(entries) == n:
            yield Sequence(tuple(entries))
            return
        last = entries[-1] if entries else None
        for i in range(datum.rank):
            if remaining[i] == 0:
                continue
            if last is not None and i == last:
                # growing the current run: need ell_p >= b_p + 1
                run_len = 1
                while run_len < len(entries) and entries[-run_len - 1] == i:
                    run_len += 1
                before = list(prefix_content)
                before[i] -= run_len
                ell = datum.pairing(i, lam, RootVector(tuple(before)))
                if ell < run_len + 1:
                    continue
            else:
                if datum.pairing(i, lam, RootVector(tuple(prefix_content))) < 1:
                    continue
            entries.append(i)
            remaining[i] -= 1
            prefix_content[i] += 1
            yield from extend()
            entries.pop()
            remaining[i] += 1
            prefix_content[i] -= 1

    yield from extend()


def weight_nonzero(
    datum: CartanDatum, lam: DominantWeight, alpha: RootVector
) -> tuple[bool, Sequence | None]:
    """Nonvanishing of the weight space L(Lambda)_{Lambda - alpha}.

    Short-circuits at the first piecewise dominant sequence; the witness nu
    gives the nonzero monomial weight vector f_{nu_n} ... f_{nu_1} v_Lambda.
    """
    for nu in enumerate_pd(datum, lam, alpha):
        return True, nu
    return False, None


def z_monomial(datum: CartanDatum, lam: DominantWeight, nu: Sequence) -> ZMonomial:
    """The x-exponents of Z(nu); requires nu piecewise dominant.

    Per run: exponents ell-1, ell-3, ... descending by 2, over the whole
    run when ell >= 2b, truncated after ell-b positions when b < ell < 2b,
    and absent when ell = b.  deg Z(nu) = d_{Lambda, content(nu)} is
    asserted, not assumed.
    """
    dec = run_decompose(datum, lam, nu)
    exps = [0] * len(nu)
    for (res, b), ell, c_prev in zip(dec.runs, dec.ells, dec.cuts):
        if ell < b:
            raise ValueError("Z(nu) is only defined for piecewise dominant nu")
        width = b if ell >= 2 * b else ell - b
        for j in range(width):
            exps[c_prev + j] = ell - (2 * j + 1)
    degree = sum(
        e * datum.root_square(res) for e, res in zip(exps, nu.entries)
    )
    expected = datum.defect_degree(lam, content(datum, nu))
    if degree != expected:
        raise AssertionError(
            f"deg Z(nu) = {degree} disagrees with d_Lambda,alpha = {expected}"
        )
    return ZMonomial(tuple(exps), degree)


def s_word(datum: CartanDatum, lam: DominantWeight, nu: Sequence) -> SWord:
    """The word S(nu); requires nu piecewise dominant.

    Each run contributes the staircase reduced word of the longest element
    of the run's symmetric group followed by exponents ell-1, ..., ell-b;
    piecewise dominance makes every exponent nonnegative.
    """
    dec = run_decompose(datum, lam, nu)
    blocks = []
    degree = 0
    for (res, b), ell, c_prev in zip(dec.runs, dec.ells, dec.cuts):
        if ell < b:
            raise ValueError("S(nu) is only defined for piecewise dominant nu")
        word = longest_word_staircase(b, offset=c_prev)
        exps = tuple(ell - 1 - j for j in range(b))
        sq = datum.root_square(res)
        degree += sq * (sum(exps) - b * (b - 1) // 2)
        blocks.append((word, exps))
    expected = datum.defect_degree(lam, content(datum, nu))
    if degree != expected:
        raise AssertionError(
            f"deg S(nu) = {degree} disagrees with d_Lambda,alpha = {expected}"
        )
    return SWord(tuple(blocks), degree)
