"""Shared error types and size guards for the brute-force oracles."""

import os

GUARD_ENV = "TW_GUARD_OVERRIDE"


class ResourceLimitError(RuntimeError):
    """An operation refused to run because its input exceeds a size guard."""


class InternalConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


def guard(cost: int, limit: int, what: str) -> None:
    """Refuse work whose estimated cost exceeds ``limit``.

    Setting the environment variable ``TW_GUARD_OVERRIDE`` lifts every
    guard, for benchmarking runs that accept the wait.
    """
    if cost > limit and not os.environ.get(GUARD_ENV):
        raise ResourceLimitError(
            f"{what}: size {cost} exceeds guard {limit} "
            f"(set {GUARD_ENV}=1 to override)"
        )
