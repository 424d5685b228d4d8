from stiff_spectra.core.error import StiffSpectraException

"""
Domain Errors
"""


class TangencyViolationError(StiffSpectraException, ValueError):
    """Kissing disks are not internally tangent"""

    def __init__(self, gap: float, tolerance: float):
        super().__init__(
            f"Kissing disks must be internally tangent: gap {gap:.3e} exceeds tolerance {tolerance:.1e}"
        )
        self.gap = gap
        self.tolerance = tolerance


class OverlapError(StiffSpectraException, ValueError):
    """Core disk is not contained in the outer disk"""

    def __init__(self, core_radius: float, outer_radius: float, center_distance: float):
        super().__init__(
            f"Core disk (r={core_radius}) is not inside the outer disk (r={outer_radius}), center distance: {center_distance}"
        )
        self.core_radius = core_radius
        self.outer_radius = outer_radius
        self.center_distance = center_distance


class DomainSpecError(StiffSpectraException, ValueError):
    """Invalid disk or domain specification"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid domain field '{field}': {reason}, value: {value}")
        self.field = field
        self.value = value
        self.reason = reason


"""
Query Errors
"""


class OutsideDomainError(StiffSpectraException, ValueError):
    """Point lies outside the outer disk"""

    def __init__(self, point: tuple[float, float]):
        super().__init__(f"Point {point} lies outside the outer disk")
        self.point = point


class OutOfChartError(StiffSpectraException, ValueError):
    """Abscissa outside the cusp chart where both circles are graphs"""

    def __init__(self, x1: float, core_radius: float):
        super().__init__(
            f"|x1| = {abs(x1)} must be smaller than the core radius {core_radius} in the cusp chart"
        )
        self.x1 = x1
        self.core_radius = core_radius


"""
Cusp Chart Errors
"""


class CuspGeometryError(StiffSpectraException, ValueError):
    """Invalid cusp geometry (radii or truncation half-width)"""

    def __init__(self, field: str, value: float, reason: str):
        super().__init__(f"Invalid cusp geometry '{field}': {reason}, value: {value}")
        self.field = field
        self.value = value
        self.reason = reason
