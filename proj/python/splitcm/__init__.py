"""Theta series at split-CM points and central values of twisted Hecke L-series."""

from ._core import (
    ConventionError,
    Error,
    IncompleteClassListError,
    InputError,
    InternalError,
    ResourceError,
    SplitError,
    UnsupportedError,
    admissible_levels,
    class_number,
    classify,
    l_value,
    oracle_l_value,
    reduced_forms,
    run_cli,
    table,
)

__all__ = [
    "ConventionError",
    "Error",
    "IncompleteClassListError",
    "InputError",
    "InternalError",
    "ResourceError",
    "SplitError",
    "UnsupportedError",
    "admissible_levels",
    "class_number",
    "classify",
    "l_value",
    "oracle_l_value",
    "reduced_forms",
    "run_cli",
    "table",
]
__version__ = "0.1.0"
