from stiff_spectra.core.error import StiffSpectraException

"""
Config Errors
"""


class SweepConfigError(StiffSpectraException, ValueError):
    """Invalid sweep configuration"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid sweep config {field}={value!r}: {reason}")
        self.field = field
        self.value = value
        self.reason = reason


"""
Sweep Errors
"""


class MatchingAmbiguityError(StiffSpectraException, ValueError):
    """A discrete eigenvalue is close to the predictions of two clusters"""

    def __init__(self, eps: float, lambda_eps: float, clusters: list[int]):
        super().__init__(
            f"Ambiguous matching at eps={eps:g}: eigenvalue {lambda_eps:.10g} is within rtol of clusters {clusters}"
        )
        self.eps = eps
        self.lambda_eps = lambda_eps
        self.clusters = clusters


class DegenerateFitError(StiffSpectraException, ValueError):
    """Too few usable points for a least-squares rate"""

    def __init__(self, n_points: int, required: int = 3):
        super().__init__(f"Rate fit needs at least {required} usable points, got {n_points}")
        self.n_points = n_points
        self.required = required


"""
Catalog Errors
"""


class SweepNotFoundError(StiffSpectraException, LookupError):
    """No stored sweep with the given id"""

    def __init__(self, sweep_id: str | None):
        super().__init__(f"Sweep not found in catalog: {sweep_id or '(latest)'}")
        self.sweep_id = sweep_id
