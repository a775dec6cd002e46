"""Runtime configuration.

All searches in this package are exhaustive and exact, so the only tunable
is how large an enumeration we are willing to attempt.  The bound can be
overridden with the ``PCAT_BOUND`` environment variable.
"""

import os

DEFAULT_ENUMERATION_BOUND = 4096


def enumeration_bound() -> int:
    raw = os.environ.get("PCAT_BOUND")
    if raw is None:
        return DEFAULT_ENUMERATION_BOUND
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"PCAT_BOUND must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError("PCAT_BOUND must be positive")
    return value
