"""Exact scalar fields for the linear algebra: rationals and prime fields.

Scalars are plain ``Fraction`` values over the rationals and reduced ints
over GF(p); the field object supplies the arithmetic so elimination code
is generic.  Only what Gaussian elimination needs is provided.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    char = 0
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(n) -> Fraction:
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"characteristic {p} is not prime")
        self.char = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def of(self, n) -> int:
        if isinstance(n, Fraction):
            num = n.numerator % self.char
            den = n.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.char}")
            return num * pow(den, -1, self.char) % self.char
        return n % self.char

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.char)

    def is_zero(self, a) -> bool:
        return a % self.char == 0


QQ = Rationals()


def field_of_characteristic(char: int):
    """0 gives the rationals, a prime p gives GF(p)."""
    if char == 0:
        return QQ
    return PrimeField(char)


class RowEchelon:
    """Incremental reduced row echelon form over an exact field.

    Rows are dense lists; ``add`` reduces a vector against the current
    rows, records it (normalized) if independent, and keeps the form
    reduced.  ``reduce`` returns the residual of a vector, supported on
    the non-pivot columns.
    """

    def __init__(self, width: int, field=QQ):
        self.width = width
        self.field = field
        self.rows: list[list] = []
        self.pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: list) -> list:
        F = self.field
        out = list(vec)
        for col, row_idx in self.pivots.items():
            coeff = out[col]
            if F.is_zero(coeff):
                continue
            row = self.rows[row_idx]
            for j in range(col, self.width):
                out[j] = F.sub(out[j], F.mul(coeff, row[j]))
        return out

    def add(self, vec: list) -> bool:
        F = self.field
        residual = self.reduce(vec)
        pivot = next((j for j, x in enumerate(residual) if not F.is_zero(x)), None)
        if pivot is None:
            return False
        inv = F.inv(residual[pivot])
        row = [F.mul(inv, x) for x in residual]
        for other in self.rows:
            coeff = other[pivot]
            if not F.is_zero(coeff):
                for j in range(pivot, self.width):
                    other[j] = F.sub(other[j], F.mul(coeff, row[j]))
        self.rows.append(row)
        self.pivots[pivot] = len(self.rows) - 1
        return True

    def nonpivot_columns(self) -> list[int]:
        return [j for j in range(self.width) if j not in self.pivots]


def nullity(rows: list[list], width: int, field=QQ) -> int:
    """Dimension of the solution space of the homogeneous system."""
    ech = RowEchelon(width, field)
    for row in rows:
        ech.add(row)
    return width - ech.rank
