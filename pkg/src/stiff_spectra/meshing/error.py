from stiff_spectra.core.error import StiffSpectraException

"""
Mesh Errors
"""


class MeshFailureError(StiffSpectraException, RuntimeError):
    """Mesh generation failed or produced an unacceptable mesh"""

    def __init__(self, reason: str, min_angle: float | None = None):
        detail = f", min angle: {min_angle:.2f} deg" if min_angle is not None else ""
        super().__init__(f"Mesh generation failed: {reason}{detail}")
        self.reason = reason
        self.min_angle = min_angle


class GradingSpecError(StiffSpectraException, ValueError):
    """Invalid grading specification"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid grading field '{field}': {reason}, value: {value}")
        self.field = field
        self.value = value
        self.reason = reason


"""
Mesh IO Errors
"""


class MeshFormatError(StiffSpectraException, ValueError):
    """Malformed node/element/edge file"""

    def __init__(self, path: str, reason: str):
        super().__init__(f"Malformed mesh file {path}: {reason}")
        self.path = path
        self.reason = reason
