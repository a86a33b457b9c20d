"""
Exception hierarchy for the IQA boosting toolkit.

Every error raised on purpose by the package derives from IQABoostError, so
the CLI can map "our" failures to exit status 3 and let genuine bugs surface.
"""

from typing import Optional, Sequence


class IQABoostError(Exception):
    """Base class for all toolkit errors."""


class ManifestParseError(IQABoostError, ValueError):
    """A manifest or score-file row could not be parsed."""

    def __init__(self, message: str, row: Optional[int] = None, path: str = ""):
        self.row = row
        self.path = path
        where = f"{path}: " if path else ""
        if row is not None:
            where += f"row {row}: "
        super().__init__(f"{where}{message}")


class DuplicateStimulusError(IQABoostError, ValueError):
    """A stimulus id (or stimulus/metric pair) appears more than once."""

    def __init__(self, message: str, stimulus_id: str = ""):
        self.stimulus_id = stimulus_id
        super().__init__(message)


class ShapeError(IQABoostError, ValueError):
    """Inputs have incompatible or too-small dimensions."""


class DegenerateInputError(IQABoostError, ValueError):
    """Inputs are valid in type but carry no usable information."""


class NumericError(IQABoostError, ArithmeticError):
    """A computation produced non-finite values."""

    def __init__(self, message: str, theta: Optional[Sequence[float]] = None):
        self.theta = None if theta is None else list(theta)
        super().__init__(message)


class ConvergenceError(IQABoostError):
    """An iterative solver stopped before meeting its tolerance."""

    def __init__(self, message: str, worst_violation: float = float("nan")):
        self.worst_violation = worst_violation
        super().__init__(message)


class RegistryError(IQABoostError, KeyError):
    """An unknown or duplicated metric id."""

    def __init__(self, message: str, suggestion: str = ""):
        self.suggestion = suggestion
        if suggestion:
            message = f"{message} (did you mean '{suggestion}'?)"
        super().__init__(message)

    def __str__(self) -> str:
        # KeyError quotes its argument; keep messages readable
        return str(self.args[0])


class CompletenessError(IQABoostError, KeyError):
    """A required (stimulus, metric) pair or report row is missing."""

    def __init__(self, message: str, missing: object = None):
        self.missing = missing
        super().__init__(message)

    def __str__(self) -> str:
        return str(self.args[0])


class ImageDecodeError(IQABoostError):
    """An image file is unreadable or in an unsupported format."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
