from stiff_spectra.core.error import StiffSpectraException

"""
Option Errors
"""


class SolverOptionsError(StiffSpectraException, ValueError):
    """Invalid eigen-solver option"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid solver option {field}={value!r}: {reason}")
        self.field = field
        self.value = value
        self.reason = reason


"""
Solve Errors
"""


class FactorizationSingularError(StiffSpectraException, RuntimeError):
    """K - shift*M stayed singular after perturbed retries"""

    def __init__(self, shift: float, attempts: int):
        super().__init__(f"Factorization of K - shift*M is singular at shift {shift:.6e} after {attempts} attempt(s)")
        self.shift = shift
        self.attempts = attempts


class NoConvergenceError(StiffSpectraException, RuntimeError):
    """Lanczos iteration did not converge"""

    def __init__(self, requested: int, converged: int, max_iter: int):
        super().__init__(f"Eigen-solver converged {converged} of {requested} eigenpairs within {max_iter} iterations")
        self.requested = requested
        self.converged = converged
        self.max_iter = max_iter
