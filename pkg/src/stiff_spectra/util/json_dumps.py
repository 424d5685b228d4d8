from __future__ import annotations

import json
from enum import Enum
from typing import Any

import numpy as np


def _default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    return str(value)


def json_dumps(obj: Any, /, **kwargs: Any) -> str:
    """
    Serialize obj to a JSON string, delegating to json.dumps.

    Unless the caller overrides them, keys are sorted, non-ASCII text is kept
    and numpy scalars/arrays and enums are converted, so identical values give
    identical strings (used for hashing configurations).
    """
    kwargs.setdefault("ensure_ascii", False)
    kwargs.setdefault("sort_keys", True)
    kwargs.setdefault("default", _default)
    return json.dumps(obj, **kwargs)
