from enum import Enum


class Verdict(str, Enum):
    CONSISTENT = "CONSISTENT"
    CONTRADICTION = "CONTRADICTION"
    INCONCLUSIVE = "INCONCLUSIVE"
    FIXED_POINT_FORCED = "FIXED_POINT_FORCED"
    FREE_ACTION_POSSIBLE = "FREE_ACTION_POSSIBLE"

    def __str__(self):
        return self.value


class VerificationFailure(RuntimeError):
    """A check disagreed with the result it is meant to reproduce."""
