from stiff_spectra.core.error import StiffSpectraException

"""
Assembly Errors
"""


class DimensionMismatchError(StiffSpectraException, ValueError):
    """Vector or DofMap size does not match the mesh / system"""

    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, actual {actual}")
        self.what = what
        self.expected = expected
        self.actual = actual


class CoefficientValueError(StiffSpectraException, ValueError):
    """Coefficient values must be positive and finite"""

    def __init__(self, region: str, value: float):
        super().__init__(f"Coefficient for region '{region}' must be positive and finite, value: {value}")
        self.region = region
        self.value = value


class DofMapError(StiffSpectraException, ValueError):
    """DofMap cannot be built on the given mesh"""

    def __init__(self, mode: str, reason: str):
        super().__init__(f"Cannot build DofMap in mode {mode}: {reason}")
        self.mode = mode
        self.reason = reason


"""
Functional Errors
"""


class NotConvergedError(StiffSpectraException, ArithmeticError):
    """Eigen-residual of (u, lambda) above tolerance"""

    def __init__(self, residual: float, tolerance: float):
        super().__init__(f"Eigen-residual {residual:.3e} exceeds tolerance {tolerance:.1e}")
        self.residual = residual
        self.tolerance = tolerance
