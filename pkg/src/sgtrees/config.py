"""Stage bounds shared by the library and the CLI."""

from __future__ import annotations

import os

DEFAULT_MAX_STAGE = 12
DEFAULT_TABLE_STAGE = 6
ENV_MAX_STAGE = "SG_MAX_STAGE"


class StageBoundError(ValueError):
    pass


def max_stage() -> int:
    raw = os.environ.get(ENV_MAX_STAGE)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_STAGE
    try:
        value = int(raw)
    except ValueError:
        raise StageBoundError(f"{ENV_MAX_STAGE}={raw!r} is not an integer") from None
    if value < 0:
        raise StageBoundError(f"{ENV_MAX_STAGE} must be non-negative")
    return value


def check_stage(n: int, bound: int | None = None, what: str = "stage") -> int:
    limit = max_stage() if bound is None else bound
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{what} must be an int")
    if n < 0:
        raise StageBoundError(f"{what} {n} is negative")
    if n > limit:
        raise StageBoundError(f"{what} {n} exceeds bound {limit}")
    return n
