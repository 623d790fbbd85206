"""Piecewise dominant sequences and cocenters of cyclotomic KLR algebras.

Submodules:

* :mod:`klrpd.cartan` -- Cartan data, weights, roots, pairings.
* :mod:`klrpd.pdseq` -- piecewise dominance, enumeration, Z(nu), S(nu).
* :mod:`klrpd.gdim` -- the closed graded-dimension formula.
* :mod:`klrpd.engine` -- concrete quotients, cocenters, verification.
* :mod:`klrpd.crystal` -- the path-model crystal B(Lambda).
* :mod:`klrpd.multiplicity` -- Peterson/Freudenthal weight multiplicities.
* :mod:`klrpd.cli` -- the ``klrpd`` command line tool.
"""

from .cartan import (
    CartanDatum,
    CartanError,
    DominantWeight,
    RootVector,
    Sequence,
    affine_a,
    builtin_datum,
    content,
    finite_type,
    rank_one,
    validate_datum,
)

__all__ = [
    "CartanDatum",
    "CartanError",
    "DominantWeight",
    "RootVector",
    "Sequence",
    "affine_a",
    "builtin_datum",
    "content",
    "finite_type",
    "rank_one",
    "validate_datum",
]

__version__ = "0.1.0"
