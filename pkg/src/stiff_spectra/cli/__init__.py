from .config import RunConfig, parse_config
from .enum import Subcommand
from .main import build_parser, main, run

__all__ = ["RunConfig", "Subcommand", "build_parser", "main", "parse_config", "run"]
