"""Closed graded-dimension formula for cyclotomic KLR idempotent truncations.

For sequences ``nu, nu'`` of equal content the graded dimension of
``e(nu) R^L_beta e(nu')`` is a Laurent polynomial in ``q``:

    sum over w with w.nu = nu' of
        prod_t  [N(w, nu, t)]_{q_t} * q_t^{N(1, nu, t) - 1},

where ``q_t = q^{d_{nu_t}}``, ``[m]`` is the (possibly negative) quantum
integer, and ``N(w, nu, t) = <h_{nu_t}, L - sum of alpha_{nu_j} over the
j < t with w(j) < w(t)>``.  Factors with ``N <= 0`` are kept exactly as the
formula dictates; the cancellation across ``w`` is part of the statement.

The whole-algebra series is the sum of the pair series over ``I^alpha x
I^alpha``; its value at ``q = 1`` is the dimension of ``R^L_alpha`` over any
field, which is what the rewriting engine checks its elimination against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .cartan import CartanDatum, DominantWeight, RootVector, Sequence, content
from . import permutations as perms

DEFAULT_PERMUTATION_BOUND = 8


@dataclass(frozen=True)
class LaurentPoly:
    """Integer-coefficient Laurent polynomial with finite support."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", {d: c for d, c in self.coeffs.items() if c}
        )

    @staticmethod
    def zero() -> LaurentPoly:
        return LaurentPoly({})

    @staticmethod
    def one() -> LaurentPoly:
        return LaurentPoly({0: 1})

    @staticmethod
    def monomial(degree: int, coeff: int = 1) -> LaurentPoly:
        return LaurentPoly({degree: coeff})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({d: -c for d, c in self.coeffs.items()})

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, int] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                key = d1 + d2
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, degree: int) -> LaurentPoly:
        return LaurentPoly({d + degree: c for d, c in self.coeffs.items()})

    def coeff(self, degree: int) -> int:
        return self.coeffs.get(degree, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def min_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self.coeffs)

    def max_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def to_json(self) -> list[dict[str, int]]:
        return [{"degree": d, "coeff": self.coeffs[d]} for d in sorted(self.coeffs)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            if d == 0:
                parts.append(f"{c}")
            elif d == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{d}" if c != 1 else f"q^{d}")
        return " + ".join(parts)


def quantum_integer(m: int, d_i: int = 1) -> LaurentPoly:
    """``[m]`` in the variable ``q^{d_i}``: antisymmetric, ``[0] = 0``.

    >>> str(quantum_integer(3))
    'q^-2 + 1 + q^2'
    >>> quantum_integer(-2, 2) == -quantum_integer(2, 2)
    True
    """
    if m == 0:
        return LaurentPoly.zero()
    if m < 0:
        return -quantum_integer(-m, d_i)
    return LaurentPoly({d_i * (m - 1 - 2 * j): 1 for j in range(m)})


def orbit_transporters(nu: Sequence, nu_prime: Sequence) -> list[perms.Perm]:
    """All permutations ``w`` with ``w nu = nu'`` (empty if contents differ)."""
    return perms.transporters(nu.entries, nu_prime.entries)


def _pair_term(
    datum: CartanDatum,
    lam: DominantWeight,
    nu: tuple[int, ...],
    w: perms.Perm,
    base_exponents: tuple[int, ...],
) -> LaurentPoly:
    """One summand of the pair formula for a fixed transporter ``w``."""
    poly = LaurentPoly.one()
    n = len(nu)
    for t in range(n):
        res = nu[t]
        pairing = lam.coords[res]
        for j in range(t):
            if w[j] < w[t]:
                pairing -= datum.a[res][nu[j]]
        factor = quantum_integer(pairing, datum.d[res])
        if factor.is_zero():
            return LaurentPoly.zero()
        poly = poly * factor.shift(base_exponents[t])
    return poly


def _base_exponents(
    datum: CartanDatum, lam: DominantWeight, nu: tuple[int, ...]
) -> tuple[int, ...]:
    """The exponents ``d_{nu_t} (N(1, nu, t) - 1)`` shared by every ``w``."""
    out = []
    for t, res in enumerate(nu):
        pairing = lam.coords[res] - sum(datum.a[res][nu[j]] for j in range(t))
        out.append(datum.d[res] * (pairing - 1))
    return tuple(out)


def graded_dim_pair(
    datum: CartanDatum,
    lam: DominantWeight,
    nu: Sequence,
    nu_prime: Sequence,
    permutation_bound: int = DEFAULT_PERMUTATION_BOUND,
) -> LaurentPoly:
    """Graded dimension of ``e(nu) R^L_beta e(nu')``; zero if contents differ."""
    if content(datum, nu) != content(datum, nu_prime):
        return LaurentPoly.zero()
    n = len(nu)
    if n > permutation_bound:
        raise ValueError(
            f"sequence length {n} exceeds the permutation bound {permutation_bound}"
        )
    base = _base_exponents(datum, lam, nu.entries)
    total = LaurentPoly.zero()
    for w in orbit_transporters(nu, nu_prime):
        total = total + _pair_term(datum, lam, nu.entries, w, base)
    return total


def graded_dim_algebra(
    datum: CartanDatum,
    lam: DominantWeight,
    alpha: RootVector,
    permutation_bound: int = DEFAULT_PERMUTATION_BOUND,
) -> LaurentPoly:
    """Graded dimension of the whole cyclotomic quotient ``R^L_alpha``.

    Summing the pair formula over all ``nu'`` lets ``w`` range over the
    full symmetric group, so this iterates ``I^alpha x S_n`` directly.
    """
    n = alpha.height
    if n > permutation_bound:
        raise ValueError(
            f"height {n} exceeds the permutation bound {permutation_bound}"
        )
    if n == 0:
        return LaurentPoly.one()
    total = LaurentPoly.zero()
    for nu in datum.sequences_of(alpha):
        base = _base_exponents(datum, lam, nu.entries)
        for w in perms.all_perms(n):
            total = total + _pair_term(datum, lam, nu.entries, w, base)
    return total
