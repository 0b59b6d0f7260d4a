# __init__.py
# Marks cubic_census as a package and re-exports the entry points most callers need.
# The distribution is named cubic-census (dashes); the import package uses underscores.

from .errors import CubicCensusError
from .ffpoly import FqField, PolyFq, get_field
from .forms import CubicForm, SplittingType, classify_mod_P, maximalize
from .infinity import SigmaClass, classify_at_infinity
from .predict import predict_split, predict_total
from .qsixth import QSixth, SecondaryElem

__version__ = "0.1.0"

__all__ = [
    "CubicCensusError",
    "FqField",
    "PolyFq",
    "get_field",
    "CubicForm",
    "SplittingType",
    "classify_mod_P",
    "maximalize",
    "SigmaClass",
    "classify_at_infinity",
    "predict_split",
    "predict_total",
    "QSixth",
    "SecondaryElem",
]
