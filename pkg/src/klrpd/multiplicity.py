"""Exact weight multiplicities via Peterson's recurrence and Freudenthal.

This is the independent oracle for ``dim L(Lambda)_{Lambda - alpha}``: it
never looks at sequences or cocenters, only at the bilinear form of the
datum.  Everything is computed over exact rationals, with integrality of
the results asserted.

Peterson's recurrence determines root multiplicities: with
``c(beta) = sum over k dividing beta of mult(beta/k) / k``,

    (beta, beta - 2 rho) c(beta) = sum over ordered splittings
        beta = beta' + beta'' of (beta', beta'') c(beta') c(beta''),

where ``(rho, alpha_i) = d_i`` fixes every pairing of rho against the root
lattice.  Freudenthal's formula then gives the weight multiplicities:

    (2 (Lambda + rho, alpha) - (alpha, alpha)) m(alpha) =
        2 sum over positive roots gamma, j >= 1 of
            mult(gamma) (Lambda - alpha + j gamma, gamma) m(alpha - j gamma).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .cartan import CartanDatum, DominantWeight, RootVector


class MultiplicityError(ArithmeticError):
    """A division that the theory promises cannot happen came up zero."""


@dataclass(frozen=True)
class RootMultTable:
    """Positive-root multiplicities up to a height bound (0 = not a root)."""

    datum: CartanDatum
    height_bound: int
    mults: Mapping[tuple[int, ...], int]

    def mult(self, beta: RootVector) -> int:
        return self.mults.get(beta.coeffs, 0)

    def positive_roots(self) -> Iterator[tuple[RootVector, int]]:
        for coeffs in sorted(self.mults):
            yield RootVector(coeffs), self.mults[coeffs]


def _rho_pairing(datum: CartanDatum, beta: RootVector) -> int:
    return sum(c * datum.d[i] for i, c in enumerate(beta.coeffs) if c)


def _proper_subvectors(beta: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All 0 < beta' < beta componentwise (beta' != beta)."""
    ranges = [range(c + 1) for c in beta]
    def rec(idx: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if idx == len(beta):
            t = tuple(acc)
            if any(t) and t != beta:
                yield t
            return
        for v in ranges[idx]:
            acc.append(v)
            yield from rec(idx + 1, acc)
            acc.pop()
    yield from rec(0, [])


def root_mults(datum: CartanDatum, height_bound: int) -> RootMultTable:
    """Exact multiplicities of all positive roots of height <= bound."""
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    mults: dict[tuple[int, ...], int] = {}
    cvals: dict[tuple[int, ...], Fraction] = {}

    def record(coeffs: tuple[int, ...], m: int) -> None:
        c = Fraction(m)
        for k in range(2, sum(coeffs) + 1):
            if all(x % k == 0 for x in coeffs):
                sub = tuple(x // k for x in coeffs)
                c += Fraction(mults.get(sub, 0), k)
        cvals[coeffs] = c
        if m:
            mults[coeffs] = m

    for i in range(datum.rank):
        vec = [0] * datum.rank
        vec[i] = 1
        record(tuple(vec), 1)

    for h in range(2, height_bound + 1):
        for beta in datum.roots_of_height(h):
            coeffs = beta.coeffs
            rhs = Fraction(0)
            for sub in _proper_subvectors(coeffs):
                c1 = cvals.get(sub)
                if not c1:
                    continue
                rest = tuple(b - s for b, s in zip(coeffs, sub))
                c2 = cvals.get(rest)
                if not c2:
                    continue
                pair = datum.bilinear(RootVector(sub), RootVector(rest))
                if pair:
                    rhs += pair * c1 * c2
            divisor_part = Fraction(0)
            for k in range(2, h + 1):
                if all(x % k == 0 for x in coeffs):
                    sub = tuple(x // k for x in coeffs)
                    divisor_part += Fraction(mults.get(sub, 0), k)
            denom = datum.bilinear(beta, beta) - 2 * _rho_pairing(datum, beta)
            if denom == 0:
                # A non-simple beta with vanishing denominator cannot be a
                # root (real roots with <rho, beta^vee> = 1 are simple and
                # imaginary roots make the denominator negative), so only
                # the divisibility part survives.  The identity still
                # requires the right-hand side to vanish.
                if rhs != 0:
                    raise MultiplicityError(
                        f"Peterson denominator vanishes at {coeffs} with nonzero numerator"
                    )
                m = Fraction(0)
                c_beta = divisor_part
            else:
                c_beta = rhs / denom
                m = c_beta - divisor_part
            if m.denominator != 1 or m < 0:
                raise MultiplicityError(f"non-integral root multiplicity {m} at {coeffs}")
            cvals[coeffs] = c_beta
            if m:
                mults[coeffs] = int(m)
    return RootMultTable(datum, height_bound, mults)


def freudenthal_mult(
    datum: CartanDatum,
    lam: DominantWeight,
    alpha: RootVector,
    table: RootMultTable | None = None,
    _memo: dict[tuple[int, ...], int] | None = None,
) -> int:
    """``dim L(Lambda)_{Lambda - alpha}`` as an exact nonnegative integer."""
    if table is None or table.height_bound < alpha.height:
        table = root_mults(datum, max(alpha.height, 1)) if alpha.height else None
    memo: dict[tuple[int, ...], int] = {} if _memo is None else _memo

    def m_of(a: tuple[int, ...]) -> int:
        if not any(a):
            return 1
        if a in memo:
            return memo[a]
        av = RootVector(a)
        numerator = Fraction(0)
        for gamma, mult in table.positive_roots():
            if not av.dominates(gamma):
                continue
            g_lam = datum.weight_root_form(lam, gamma)
            g_alpha = datum.bilinear(av, gamma)
            g_sq = datum.bilinear(gamma, gamma)
            j = 1
            rest = av - gamma
            while True:
                higher = m_of(rest.coeffs)
                if higher:
                    numerator += 2 * mult * (g_lam - g_alpha + j * g_sq) * higher
                if not rest.dominates(gamma):
                    break
                rest = rest - gamma
                j += 1
        denominator = (
            2 * datum.weight_root_form(lam, av)
            + 2 * _rho_pairing(datum, av)
            - datum.bilinear(av, av)
        )
        if denominator == 0:
            if numerator != 0:
                raise MultiplicityError(
                    f"Freudenthal denominator vanishes at {a} with nonzero numerator"
                )
            memo[a] = 0
            return 0
        value = numerator / denominator
        if value.denominator != 1 or value < 0:
            raise MultiplicityError(f"non-integral weight multiplicity {value} at {a}")
        memo[a] = int(value)
        return memo[a]

    return m_of(alpha.coeffs)


class WeightMultiplicities:
    """Memoized Freudenthal multiplicities for one (datum, Lambda) pair.

    Shares the root table and the recursion memo across queries, and can
    preload/flush a JSON-lines cache for the CLI.
    """

    def __init__(self, datum: CartanDatum, lam: DominantWeight, height_bound: int = 1):
        self.datum = datum
        self.lam = lam
        self._table = root_mults(datum, max(height_bound, 1))
        self._memo: dict[tuple[int, ...], int] = {}

    def ensure_height(self, height: int) -> None:
        if height > self._table.height_bound:
            self._table = root_mults(self.datum, height)

    def mult(self, alpha: RootVector) -> int:
        self.ensure_height(alpha.height)
        return freudenthal_mult(self.datum, self.lam, alpha, self._table, self._memo)

    def preload(self, entries: Mapping[tuple[int, ...], int]) -> None:
        self._memo.update(entries)

    def snapshot(self) -> dict[tuple[int, ...], int]:
        return dict(self._memo)
