from stiff_spectra.core.error import StiffSpectraException

"""
Configuration Errors
"""


class ConfigParseError(StiffSpectraException, ValueError):
    """Config file missing or not valid TOML"""

    def __init__(self, path: str, reason: str):
        super().__init__(f"Cannot read config file {path}: {reason}")
        self.path = path
        self.reason = reason


class ConfigValidationError(StiffSpectraException, ValueError):
    """A field of the merged configuration is missing or invalid"""

    def __init__(self, field: str, value: object, reason: str):
        super().__init__(f"Invalid configuration field '{field}': {reason}, value: {value!r}")
        self.field = field
        self.value = value
        self.reason = reason
