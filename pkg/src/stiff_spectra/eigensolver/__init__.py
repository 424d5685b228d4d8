from .options import SolverOptions
from .solver import EigenPair, count_below, default_shift, eigenvalues_near, residual_norms, solve_gevp

__all__ = [
    "EigenPair",
    "SolverOptions",
    "count_below",
    "default_shift",
    "eigenvalues_near",
    "residual_norms",
    "solve_gevp",
]
