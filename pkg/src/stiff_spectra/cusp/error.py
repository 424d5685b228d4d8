from stiff_spectra.core.error import StiffSpectraException

"""
Cusp Study Errors
"""


class CuspStudyConfigError(StiffSpectraException, ValueError):
    """Invalid cusp study configuration"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid cusp study config {field}={value!r}: {reason}")
        self.field = field
        self.value = value
        self.reason = reason


class CuspProfileError(StiffSpectraException, ValueError):
    """Profile samples must be finite with strictly decreasing x1"""

    def __init__(self, reason: str):
        super().__init__(f"Invalid cusp profile: {reason}")
        self.reason = reason


class SamplePointError(StiffSpectraException, ValueError):
    """Sample point lies outside every mesh triangle"""

    def __init__(self, point: tuple[float, float]):
        super().__init__(f"Sample point {point} is not covered by the mesh")
        self.point = point


class CuspProblemError(StiffSpectraException, ValueError):
    """Invalid argument to a cusp solve"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid cusp problem argument {field}={value!r}: {reason}")
        self.field = field
        self.value = value
        self.reason = reason
