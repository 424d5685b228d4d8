from enum import Enum


class DofMode(Enum):
    FREE = "free"
    DIRICHLET_ON_GAMMA0 = "dirichlet_on_gamma0"
    CONSTANT_TRACE_ON_GAMMA0 = "constant_trace_on_gamma0"
    DIRICHLET_ON_GAMMA1 = "dirichlet_on_gamma1"
