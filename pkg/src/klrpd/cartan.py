"""Cartan data, weights, root-lattice elements and their exact pairings.

All arithmetic is over plain Python integers (arbitrary precision), so
affine pairings never overflow.  Residue labels are opaque strings; every
value type stores coefficients as a tuple aligned with the datum's label
order, which makes the types hashable and safe to share between workers.

Conventions:

* ``a[i][j]`` is the Cartan matrix entry ``a_{ij} = <h_i, alpha_j>``.
* ``d[i]`` are the positive symmetrizers, ``(alpha_i, alpha_j) = d_i a_{ij}``.
* For a dominant weight ``L`` and root ``beta``,
  ``pairing(i, L, beta) = <h_i, L - beta>``.
* ``defect_degree(L, alpha) = 2(L, alpha) - (alpha, alpha)``; the cocenter
  of the corresponding cyclotomic quotient lives in ``[0, defect_degree]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence as Seq


class CartanError(ValueError):
    """Raised when a matrix/symmetrizer pair violates a Cartan axiom."""


@dataclass(frozen=True)
class CartanDatum:
    """A symmetrizable generalized Cartan matrix with symmetrizers.

    Use :func:`validate_datum` or the builtin family constructors rather
    than instantiating directly; the constructor does not re-check axioms.
    """

    labels: tuple[str, ...]
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise CartanError(f"unknown residue label {label!r}") from None

    # -- constructors for the value types ---------------------------------

    def weight(self, coords: Mapping[str, int] | Iterable[tuple[str, int]]) -> DominantWeight:
        """Dominant weight from a label -> coordinate mapping."""
        vec = [0] * self.rank
        for label, c in dict(coords).items():
            if c < 0:
                raise CartanError(f"dominant weight coordinate at {label!r} is negative")
            vec[self.index(label)] = int(c)
        return DominantWeight(tuple(vec))

    def root(self, coeffs: Mapping[str, int] | Iterable[tuple[str, int]]) -> RootVector:
        """Element of Q^+ from a label -> multiplicity mapping."""
        vec = [0] * self.rank
        for label, c in dict(coeffs).items():
            if c < 0:
                raise CartanError(f"root coefficient at {label!r} is negative")
            vec[self.index(label)] = int(c)
        return RootVector(tuple(vec))

    def simple_root(self, label: str) -> RootVector:
        vec = [0] * self.rank
        vec[self.index(label)] = 1
        return RootVector(tuple(vec))

    def fundamental_weight(self, label: str) -> DominantWeight:
        vec = [0] * self.rank
        vec[self.index(label)] = 1
        return DominantWeight(tuple(vec))

    def zero_root(self) -> RootVector:
        return RootVector((0,) * self.rank)

    def sequence(self, entries: Iterable[str]) -> Sequence:
        return Sequence(tuple(self.index(label) for label in entries))

    def labels_of(self, nu: Sequence) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in nu.entries)

    # -- pairings ----------------------------------------------------------

    def pairing(self, i: int | str, lam: DominantWeight, beta: RootVector) -> int:
        """``<h_i, Lambda - beta>`` as an exact integer."""
        if isinstance(i, str):
            i = self.index(i)
        row = self.a[i]
        return lam.coords[i] - sum(b * row[j] for j, b in enumerate(beta.coeffs) if b)

    def bilinear(self, alpha: RootVector, beta: RootVector) -> int:
        """Symmetric form ``(alpha, beta) = sum a_i b_j d_i a_{ij}``."""
        total = 0
        for i, ai in enumerate(alpha.coeffs):
            if not ai:
                continue
            row = self.a[i]
            di = self.d[i]
            total += ai * di * sum(bj * row[j] for j, bj in enumerate(beta.coeffs) if bj)
        return total

    def weight_root_form(self, lam: DominantWeight, alpha: RootVector) -> int:
        """``(Lambda, alpha) = sum_i alpha_i d_i <h_i, Lambda>``."""
        return sum(c * self.d[i] * lam.coords[i] for i, c in enumerate(alpha.coeffs) if c)

    def defect_degree(self, lam: DominantWeight, alpha: RootVector) -> int:
        """``d_{Lambda,alpha} = 2(Lambda, alpha) - (alpha, alpha)``."""
        return 2 * self.weight_root_form(lam, alpha) - self.bilinear(alpha, alpha)

    def root_square(self, i: int) -> int:
        """``(alpha_i, alpha_i) = 2 d_i``, the degree of ``x_k e(nu)`` at residue i."""
        return 2 * self.d[i]

    # -- enumeration helpers -----------------------------------------------

    def sequences_of(self, alpha: RootVector) -> Iterator[Sequence]:
        """All of ``I^alpha`` in lexicographic order of label indices."""
        pool: list[int] = []
        for i, c in enumerate(alpha.coeffs):
            pool.extend([i] * c)
        seen: set[tuple[int, ...]] = set()
        for entries in itertools.permutations(pool):
            if entries not in seen:
                seen.add(entries)
                yield Sequence(entries)

    def roots_of_height(self, height: int) -> Iterator[RootVector]:
        """All alpha in Q^+ with |alpha| equal to ``height``."""
        for combo in _compositions(height, self.rank):
            yield RootVector(combo)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "cartan_matrix": [list(row) for row in self.a],
            "symmetrizers": list(self.d),
        }

    def fingerprint(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class DominantWeight:
    """Coordinates ``<h_i, Lambda>`` aligned with the datum's labels."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.coords):
            raise CartanError("dominant weight has a negative coordinate")

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class RootVector:
    """Nonnegative integer combination of simple roots."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.coeffs):
            raise CartanError("root vector has a negative coefficient")

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: RootVector) -> RootVector:
        return RootVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: RootVector) -> RootVector:
        return RootVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def dominates(self, other: RootVector) -> bool:
        """Componentwise ``other <= self``."""
        return all(b <= a for a, b in zip(self.coeffs, other.coeffs))


@dataclass(frozen=True)
class Sequence:
    """A residue sequence ``nu in I^n``, stored as label indices."""

    entries: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def prefix(self, k: int) -> Sequence:
        return Sequence(self.entries[:k])


def content(datum: CartanDatum, nu: Sequence) -> RootVector:
    """The root ``beta`` with ``nu in I^beta``: count each residue."""
    vec = [0] * datum.rank
    for i in nu.entries:
        vec[i] += 1
    return RootVector(tuple(vec))


def validate_datum(
    a: Seq[Seq[int]],
    d: Seq[int],
    labels: Seq[str] | None = None,
) -> CartanDatum:
    """Check the four Cartan axioms and return the datum.

    Reports the first violated axiom together with the offending entry.

    >>> validate_datum([[2]], [1]).rank
    1
    >>> validate_datum([[2, -2], [-1, 2]], [1, 1])
    Traceback (most recent call last):
        ...
    klrpd.cartan.CartanError: not symmetrizable: d_0*a[0][1] != d_1*a[1][0] (-2 != -1)
    """
    n = len(a)
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise CartanError("labels must be distinct and match the matrix size")
    if any(len(row) != n for row in a):
        raise CartanError("Cartan matrix is not square over the label set")
    if len(d) != n:
        raise CartanError("symmetrizer list length does not match the matrix")
    matrix = tuple(tuple(int(x) for x in row) for row in a)
    sym = tuple(int(x) for x in d)
    for i in range(n):
        if matrix[i][i] != 2:
            raise CartanError(f"a[{labels[i]}][{labels[i]}] = {matrix[i][i]} != 2")
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j] > 0:
                raise CartanError(f"a[{labels[i]}][{labels[j]}] = {matrix[i][j]} > 0 off the diagonal")
    for i in range(n):
        for j in range(n):
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise CartanError(
                    f"a[{labels[i]}][{labels[j]}] = 0 but a[{labels[j]}][{labels[i]}] != 0"
                )
    for i in range(n):
        if sym[i] <= 0:
            raise CartanError(f"symmetrizer d_{labels[i]} = {sym[i]} is not positive")
    for i in range(n):
        for j in range(n):
            if sym[i] * matrix[i][j] != sym[j] * matrix[j][i]:
                raise CartanError(
                    f"not symmetrizable: d_{i}*a[{i}][{j}] != d_{j}*a[{j}][{i}] "
                    f"({sym[i] * matrix[i][j]} != {sym[j] * matrix[j][i]})"
                )
    return CartanDatum(labels, matrix, sym)


# -- builtin families --------------------------------------------------------

def rank_one() -> CartanDatum:
    """The rank-1 datum with label "0" (the nilHecke base case)."""
    return validate_datum([[2]], [1], labels=("0",))


def finite_type(family: str, rank: int) -> CartanDatum:
    """Finite-type datum; labels are "1".."rank".

    Supported families: A (rank >= 1), B (>= 2), C (>= 2), D (>= 3),
    E (6, 7, 8), F (4), G (2).  B uses a short last root, C its transpose.
    """
    fam = family.upper()
    labels = tuple(str(i) for i in range(1, rank + 1))

    def chain(n: int) -> list[list[int]]:
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            m[i][i + 1] = -1
            m[i + 1][i] = -1
        return m

    if fam == "A":
        if rank < 1:
            raise CartanError("type A needs rank >= 1")
        return validate_datum(chain(rank), [1] * rank, labels)
    if fam == "B":
        if rank < 2:
            raise CartanError("type B needs rank >= 2")
        m = chain(rank)
        m[rank - 2][rank - 1] = -2
        d = [1] * rank
        d[rank - 1] = 2
        return validate_datum(m, d, labels)
    if fam == "C":
        if rank < 2:
            raise CartanError("type C needs rank >= 2")
        m = chain(rank)
        m[rank - 1][rank - 2] = -2
        d = [2] * rank
        d[rank - 1] = 1
        return validate_datum(m, d, labels)
    if fam == "D":
        if rank < 3:
            raise CartanError("type D needs rank >= 3")
        m = chain(rank - 1)
        for row in m:
            row.append(0)
        m.append([0] * rank)
        m[rank - 1][rank - 1] = 2
        m[rank - 3][rank - 1] = -1
        m[rank - 1][rank - 3] = -1
        return validate_datum(m, [1] * rank, labels)
    if fam == "E":
        if rank not in (6, 7, 8):
            raise CartanError("type E needs rank in {6, 7, 8}")
        # Bourbaki numbering: node 2 attaches to node 4 of the A-chain 1-3-4-5-...
        m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, rank)]
        for u, v in edges:
            m[u - 1][v - 1] = -1
            m[v - 1][u - 1] = -1
        return validate_datum(m, [1] * rank, labels)
    if fam == "F":
        if rank != 4:
            raise CartanError("type F needs rank 4")
        m = chain(4)
        m[1][2] = -2
        return validate_datum(m, [1, 1, 2, 2], labels)
    if fam == "G":
        if rank != 2:
            raise CartanError("type G needs rank 2")
        return validate_datum([[2, -1], [-3, 2]], [3, 1], labels)
    raise CartanError(f"unsupported finite family {family!r}")


def affine_a(e: int) -> CartanDatum:
    """Affine type ``A^(1)_{e-1}`` with labels "0".."e-1" (cyclic quiver).

    ``e = 2`` is the rank-2 matrix with off-diagonal entries -2; ``e = 3``
    is the double loop quiver of ``sl_3``-hat.
    """
    if e < 2:
        raise CartanError("affine A needs e >= 2")
    labels = tuple(str(i) for i in range(e))
    if e == 2:
        return validate_datum([[2, -2], [-2, 2]], [1, 1], labels)
    m = [[2 if i == j else 0 for j in range(e)] for i in range(e)]
    for i in range(e):
        m[i][(i + 1) % e] = -1
        m[(i + 1) % e][i] = -1
    return validate_datum(m, [1] * e, labels)


def builtin_datum(name: str, rank: int | None = None) -> CartanDatum:
    """Look up a datum by CLI-friendly family name."""
    key = name.lower().replace("_", "-")
    if key in ("rank1", "rank-1", "nilhecke"):
        return rank_one()
    if key in ("affine-a", "affinea"):
        if rank is None:
            raise CartanError("affine-a needs --rank (the number of residues e)")
        return affine_a(rank)
    if key in ("a", "b", "c", "d", "e", "f", "g"):
        if rank is None:
            raise CartanError(f"finite type {name!r} needs --rank")
        return finite_type(key, rank)
    raise CartanError(f"unknown builtin datum {name!r}")


# -- config ingestion ---------------------------------------------------------

def parse_coord_map(text: str) -> dict[str, int]:
    """Parse "label:count,label:count" CLI values; empty string is empty."""
    out: dict[str, int] = {}
    if not text.strip():
        return out
    for item in text.split(","):
        if ":" not in item:
            raise CartanError(f"bad coordinate item {item!r}; expected label:count")
        label, value = item.split(":", 1)
        try:
            out[label.strip()] = int(value)
        except ValueError:
            raise CartanError(f"bad integer in coordinate item {item!r}") from None
    return out


def datum_from_config(cfg: Mapping) -> CartanDatum:
    """Build a datum from a parsed config mapping.

    Expected keys: ``labels``, ``cartan_matrix`` (row-major), ``symmetrizers``.
    """
    try:
        labels = list(cfg["labels"])
        matrix = cfg["cartan_matrix"]
        sym = cfg["symmetrizers"]
    except KeyError as missing:
        raise CartanError(f"config is missing key {missing}") from None
    n = len(labels)
    if all(isinstance(row, (list, tuple)) for row in matrix):
        rows = [list(row) for row in matrix]
    else:
        flat = list(matrix)
        if len(flat) != n * n:
            raise CartanError("row-major cartan_matrix length does not match labels")
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
    return validate_datum(rows, list(sym), labels)
