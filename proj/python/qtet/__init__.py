"""Python access to the qtet C++ core."""

from ._core import (
    BudgetExceeded,
    DomainError,
    InputError,
    NumericError,
    PoleError,
    is_admissible,
    is_hyperideal,
    li2,
    lobachevsky,
    phi_r,
    quantum_integer,
    sixj,
    sixj_scaled,
    sixj_via_qdilog,
    solve_geometry,
    tv,
    verify_cdft,
    yhat,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "InputError",
    "NumericError",
    "PoleError",
    "is_admissible",
    "is_hyperideal",
    "li2",
    "lobachevsky",
    "phi_r",
    "quantum_integer",
    "sixj",
    "sixj_scaled",
    "sixj_via_qdilog",
    "solve_geometry",
    "tv",
    "verify_cdft",
    "yhat",
]
