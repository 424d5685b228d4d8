from enum import Enum, IntEnum


class DomainKind(Enum):
    CONCENTRIC = "concentric"
    OFFSET = "offset"
    KISSING = "kissing"


class RegionTag(IntEnum):
    """Per-triangle subdomain tag (stored in int8 arrays)."""

    CORE = 0
    ANNULUS = 1


class BoundaryTag(IntEnum):
    """
    Per-edge boundary tag.

    GAMMA0 marks the core circle (interface or, for kissing domains near the
    cusp, exterior boundary), GAMMA1 the outer circle, TRUNCATION the straight
    cut edges of a truncated cusp.
    """

    GAMMA0 = 0
    GAMMA1 = 1
    TRUNCATION = 2
