"""Gödel's System T: typechecking, normalization, Gödel numbering of normal
forms and the in-theory enumerators built on top of it."""

from .errors import (
    BudgetExhausted,
    GuardExceeded,
    ParseError,
    PreconditionError,
    SystemTError,
    TypeCheckError,
)
from .normalizer import Budget, NormalForm, equal, eval_numeral, normalize, numeral
from .parser import parse_term, parse_type
from .syntax import N, alpha_eq, arrow, pretty, show_type, subtypes
from .typecheck import check_closed, infer_type

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExhausted",
    "GuardExceeded",
    "N",
    "NormalForm",
    "ParseError",
    "PreconditionError",
    "SystemTError",
    "TypeCheckError",
    "alpha_eq",
    "arrow",
    "check_closed",
    "equal",
    "eval_numeral",
    "infer_type",
    "normalize",
    "numeral",
    "parse_term",
    "parse_type",
    "pretty",
    "show_type",
    "subtypes",
]
