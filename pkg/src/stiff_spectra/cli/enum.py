from enum import Enum


class Subcommand(Enum):
    LIMIT = "limit"
    SWEEP = "sweep"
    CUSP = "cusp"
    REPORT = "report"
