"""Lüroth expansions: run lengths of digits and dimensions of exceptional sets."""

from .errors import BudgetError, DivergenceError, DomainError, LurothError
from .expansion import cylinder, cylinder_length, digits, evaluate, luroth_map
from .moran import CertifiedValue, DimParams, dim_E, solve_s, solve_sM, zeta
from .runlength import max_run, run_trajectory

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "CertifiedValue", "DimParams", "DivergenceError", "DomainError", "LurothError",
    "cylinder", "cylinder_length", "digits", "dim_E", "evaluate", "luroth_map", "max_run",
    "run_trajectory", "solve_s", "solve_sM", "zeta",
]
