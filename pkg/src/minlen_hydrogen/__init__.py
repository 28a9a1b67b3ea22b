"""s-wave hydrogen in momentum space with a minimal length."""

from .bounds import bound_from_1s2s, bound_from_lamb
from .spectrum import (
    BoundState,
    bound_state,
    energy_exact,
    energy_series,
    normalize,
    psi,
    solve_k_closed_form,
)
from .units import CONSTANTS, DeformationParams, minimal_length

__all__ = [
    "BoundState",
    "CONSTANTS",
    "DeformationParams",
    "bound_from_1s2s",
    "bound_from_lamb",
    "bound_state",
    "energy_exact",
    "energy_series",
    "minimal_length",
    "normalize",
    "psi",
    "solve_k_closed_form",
]

__version__ = "0.1.0"
