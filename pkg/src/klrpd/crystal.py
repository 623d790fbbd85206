"""The highest-weight crystal B(Lambda) realized by piecewise-linear paths.

Vertices are polygonal paths from 0 to their weight, stored as tuples of
increment vectors with exact rational entries.  Coordinates are formal:
component 0 is the coefficient of Lambda itself, components 1..rank are
coefficients of the simple roots.  Root operators only ever consult the
pairings ``<h_i, .>``, which the formal coordinates compute faithfully, so
the crystal generated from the straight path to Lambda is the abstract
B(Lambda) for this Cartan matrix and these ``<h_i, Lambda>`` values.

Paths are identified up to reparameterization: the canonical form merges
consecutive positively-parallel increments and drops zero increments, and
vertex equality is equality of canonical forms.

The lowering operator reflects the portion of the path between the last
global minimum of the height function ``h(t) = <h_i, path(t)>`` and the
first later time the height climbs back by one; the raising operator is
the mirror image.  ``eps_i = -min h`` and ``phi_i = h(1) - min h``, so
``phi_i - eps_i = <h_i, wt>`` holds by construction (and is re-tested).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .cartan import CartanDatum, DominantWeight, RootVector, Sequence, content
from . import pdseq

Vector = tuple[Fraction, ...]


def _normalize(steps: Iterable[Vector]) -> tuple[Vector, ...]:
    out: list[Vector] = []
    for step in steps:
        if not any(step):
            continue
        if out:
            prev = out[-1]
            k = next(i for i, x in enumerate(prev) if x)
            if step[k]:
                ratio = step[k] / prev[k]
                if ratio > 0 and all(x == ratio * y for x, y in zip(step, prev)):
                    out[-1] = tuple(x + y for x, y in zip(prev, step))
                    continue
        out.append(tuple(step))
    return tuple(out)


@dataclass(frozen=True)
class CrystalVertex:
    """A normalized piecewise-linear path realizing a vertex of B(Lambda)."""

    steps: tuple[Vector, ...]

    @staticmethod
    def from_steps(steps: Iterable[Vector]) -> CrystalVertex:
        return CrystalVertex(_normalize(steps))

    def endpoint(self) -> Vector:
        if not self.steps:
            return ()
        acc = list(self.steps[0])
        for step in self.steps[1:]:
            for i, x in enumerate(step):
                acc[i] += x
        return tuple(acc)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in step] for step in self.steps]


class PathCrystal:
    """Path-model crystal of the highest weight module L(Lambda)."""

    def __init__(self, datum: CartanDatum, lam: DominantWeight):
        self.datum = datum
        self.lam = lam
        self.dim = 1 + datum.rank

    # -- coordinates -------------------------------------------------------

    def highest(self) -> CrystalVertex:
        """The straight path t -> t Lambda (empty when Lambda = 0)."""
        direction = (Fraction(1),) + (Fraction(0),) * self.datum.rank
        return CrystalVertex.from_steps([direction])

    def _alpha_vec(self, i: int) -> Vector:
        return tuple(
            Fraction(1) if j == i + 1 else Fraction(0) for j in range(self.dim)
        )

    def _h(self, i: int, vec: Vector) -> Fraction:
        if not vec:
            return Fraction(0)
        value = vec[0] * self.lam.coords[i]
        row = self.datum.a[i]
        for j in range(self.datum.rank):
            if vec[1 + j]:
                value += vec[1 + j] * row[j]
        return value

    def _heights(self, i: int, b: CrystalVertex) -> list[Fraction]:
        acc = Fraction(0)
        out = [acc]
        for step in b.steps:
            acc += self._h(i, step)
            out.append(acc)
        return out

    def wt_alpha(self, b: CrystalVertex) -> RootVector:
        """The root alpha with wt(b) = Lambda - alpha."""
        end = b.endpoint()
        if not end:
            return self.datum.zero_root()
        if end[0] != 1 and not (self.lam.is_zero() and end[0] == 0):
            raise ValueError("path does not end in Lambda - Q^+")
        coeffs = []
        for x in end[1:]:
            if x > 0 or x.denominator != 1:
                raise ValueError("path endpoint is not in Lambda - Q^+")
            coeffs.append(int(-x))
        return RootVector(tuple(coeffs))

    # -- statistics ---------------------------------------------------------

    def eps(self, i: int, b: CrystalVertex) -> int:
        m = min(self._heights(i, b))
        if m.denominator != 1:
            raise ValueError("non-integral minimum height on a crystal path")
        return -int(m)

    def phi(self, i: int, b: CrystalVertex) -> int:
        heights = self._heights(i, b)
        value = heights[-1] - min(heights)
        if value.denominator != 1:
            raise ValueError("non-integral string length on a crystal path")
        return int(value)

    # -- root operators ------------------------------------------------------

    def _reflect(self, i: int, step: Vector) -> Vector:
        coeff = self._h(i, step)
        if not coeff:
            return step
        alpha = self._alpha_vec(i)
        return tuple(x - coeff * a for x, a in zip(step, alpha))

    def root_f(self, i: int, b: CrystalVertex) -> CrystalVertex | None:
        """Lowering operator; None encodes 0."""
        heights = self._heights(i, b)
        m = min(heights)
        if heights[-1] - m < 1:
            return None
        t0 = max(t for t, h in enumerate(heights) if h == m)
        new_steps: list[Vector] = list(b.steps[:t0])
        level = m + 1
        s = t0
        while True:
            step = b.steps[s]
            if heights[s + 1] >= level:
                if heights[s + 1] == level:
                    new_steps.append(self._reflect(i, step))
                    tail = s + 1
                else:
                    f = (level - heights[s]) / (heights[s + 1] - heights[s])
                    first = tuple(x * f for x in step)
                    second = tuple(x * (1 - f) for x in step)
                    new_steps.append(self._reflect(i, first))
                    new_steps.append(second)
                    tail = s + 1
                break
            new_steps.append(self._reflect(i, step))
            s += 1
        new_steps.extend(b.steps[tail:])
        return CrystalVertex.from_steps(new_steps)

    def root_e(self, i: int, b: CrystalVertex) -> CrystalVertex | None:
        """Raising operator; None encodes 0."""
        heights = self._heights(i, b)
        m = min(heights)
        if -m < 1:
            return None
        t1 = min(t for t, h in enumerate(heights) if h == m)
        level = m + 1
        s = t1 - 1
        head: list[Vector] = []
        reflected: list[Vector] = []
        while True:
            step = b.steps[s]
            if heights[s] >= level:
                if heights[s] == level:
                    head = list(b.steps[:s])
                    reflected.append(self._reflect(i, step))
                else:
                    f = (level - heights[s]) / (heights[s + 1] - heights[s])
                    first = tuple(x * f for x in step)
                    second = tuple(x * (1 - f) for x in step)
                    head = list(b.steps[:s]) + [first]
                    reflected.append(self._reflect(i, second))
                break
            reflected.append(self._reflect(i, step))
            s -= 1
        reflected.reverse()
        return CrystalVertex.from_steps(
            head + reflected + list(b.steps[t1:])
        )

    # -- generation ----------------------------------------------------------

    def generate(self, max_height: int) -> set[CrystalVertex]:
        """All vertices with |Lambda - wt| <= max_height (breadth first)."""
        top = self.highest()
        seen = {top}
        frontier = [top]
        for _ in range(max_height):
            nxt = []
            for b in frontier:
                for i in range(self.datum.rank):
                    fb = self.root_f(i, b)
                    if fb is not None and fb not in seen:
                        seen.add(fb)
                        nxt.append(fb)
            frontier = nxt
        return seen

    def weight_multiplicity(self, alpha: RootVector) -> int:
        vertices = self.generate(alpha.height)
        return sum(1 for b in vertices if self.wt_alpha(b) == alpha)

    # -- piecewise dominant paths ----------------------------------------------

    def pd_path(self, nu: Sequence) -> CrystalVertex:
        """b_nu = f_{nu_n} ... f_{nu_1} v_Lambda; defined for PD sequences."""
        b = self.highest()
        for k, i in enumerate(nu.entries):
            nxt = self.root_f(i, b)
            if nxt is None:
                raise RuntimeError(
                    f"lowering operator vanished at step {k + 1} of a "
                    "piecewise dominant sequence; this contradicts the theory"
                )
            b = nxt
        return b

    def extract_pd(self, b: CrystalVertex, tie_break: str = "min") -> Sequence:
        """A piecewise dominant nu with pd_path(nu) = b.

        The last run's residue i is any label with eps_i(b) > 0, raised
        fully; ``tie_break`` picks the smallest ("min") or largest ("max")
        such label index.
        """
        runs: list[tuple[int, int]] = []
        cur = b
        while cur != self.highest():
            candidates = [i for i in range(self.datum.rank) if self.eps(i, cur) > 0]
            if not candidates:
                raise RuntimeError("vertex below the highest weight with all eps = 0")
            i = min(candidates) if tie_break == "min" else max(candidates)
            b0 = self.eps(i, cur)
            for _ in range(b0):
                nxt = self.root_e(i, cur)
                if nxt is None:
                    raise RuntimeError("raising operator vanished before eps steps")
                cur = nxt
            runs.append((i, b0))
        entries: list[int] = []
        for i, b0 in reversed(runs):
            entries.extend([i] * b0)
        return Sequence(tuple(entries))

    def pd_classes(
        self, alpha: RootVector
    ) -> dict[CrystalVertex, list[Sequence]]:
        """Partition of the PD sequences in I^alpha by their crystal path."""
        classes: dict[CrystalVertex, list[Sequence]] = {}
        for nu in pdseq.enumerate_pd(self.datum, self.lam, alpha):
            classes.setdefault(self.pd_path(nu), []).append(nu)
        return classes
