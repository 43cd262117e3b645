"""Effective dimension of finite semigroups: exact bounds, witnesses, search."""

from ._backend import BACKEND
from .cayley import CayleyTable, validate, from_cay, derive_structure, classify_basic
from .fields import make_field, parse_field, root_of_unity
from .linalg import Matrix, rank_solve, smith_form

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CayleyTable",
    "validate",
    "from_cay",
    "derive_structure",
    "classify_basic",
    "make_field",
    "parse_field",
    "root_of_unity",
    "Matrix",
    "rank_solve",
    "smith_form",
    "__version__",
]
