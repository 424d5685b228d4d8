from stiff_spectra.core.error import StiffSpectraException

"""
Regime Errors
"""


class RegimeError(StiffSpectraException, ValueError):
    """Density exponent m must be finite"""

    def __init__(self, m: float):
        super().__init__(f"Density exponent m must be a finite real, m: {m}")
        self.m = m


"""
Correction Errors
"""


class ZeroEigenvalueError(StiffSpectraException, ArithmeticError):
    """c0 is undefined for a vanishing limit eigenvalue"""

    def __init__(self, lambda0: float):
        super().__init__(f"Limit eigenvalue must be nonzero to determine c0, lambda0: {lambda0}")
        self.lambda0 = lambda0


class CompatibilityViolationError(StiffSpectraException, ArithmeticError):
    """Neumann data and volume load of a core problem do not balance"""

    def __init__(self, residual: float, tolerance: float):
        super().__init__(
            f"Compatibility residual {residual:.3e} of the core Neumann problem exceeds {tolerance:.1e}"
        )
        self.residual = residual
        self.tolerance = tolerance


class MissingFieldError(StiffSpectraException, ValueError):
    """Correction field required by the regime is absent"""

    def __init__(self, field: str, regime: str):
        super().__init__(f"Correction field '{field}' is required for regime {regime}")
        self.field = field
        self.regime = regime


class IndexOutOfRangeError(StiffSpectraException, ValueError):
    """Requested eigenvalue index is not covered by the limit spectrum"""

    def __init__(self, n: int, available: int):
        super().__init__(f"Index n={n} is outside the computed limit spectrum (1..{available})")
        self.n = n
        self.available = available
