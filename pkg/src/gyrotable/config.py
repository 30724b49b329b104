import os

ENV_MAX_ORDER = "GYROTABLE_MAX_ORDER"

DEFAULT_DOUBLING_CAP = 4096
DEFAULT_ENUMERATION_CAP = 64


def size_cap(default: int) -> int:
    """Return the size cap, honouring the GYROTABLE_MAX_ORDER override."""
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
