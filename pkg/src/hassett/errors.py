"""Exception types shared across the package."""

from __future__ import annotations


class HassettError(ValueError):
    """Base class. ``code`` is a short machine-readable tag."""

    code = "error"

    def __init__(self, message: str = "", code: str | None = None):
        super().__init__(message or self.code)
        if code is not None:
            self.code = code


class ShapeError(HassettError):
    code = "shape"


class DegenerateError(HassettError):
    code = "degenerate"


class RankError(HassettError):
    code = "rank"


class ConstraintError(HassettError):
    code = "constraint"


class DomainError(HassettError):
    code = "domain"


class NotApplicableError(HassettError):
    """A hypothesis of the partner-count formula fails for ``d``."""

    code = "not-applicable"

    def __init__(self, d: int, hypothesis: str):
        super().__init__(f"d={d}: {hypothesis}")
        self.d = d
        self.hypothesis = hypothesis


class FilterError(HassettError):
    code = "filter"


class WitnessError(HassettError):
    """A stored witness failed re-validation."""

    code = "witness"
