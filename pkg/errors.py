"""
Exception hierarchy shared by the library modules and the CLI.
"""
from typing import Iterable, Optional, Sequence


class ScgError(Exception):
    """Base class for every error raised by this package."""


class ClosureOverflowError(ScgError):
    """Raised when an explicit enumeration would exceed the element budget."""

    def __init__(self, cap: int, subset: Optional[Sequence[int]] = None, what: str = "closure"):
        self.cap = cap
        self.subset = tuple(subset) if subset is not None else None
        message = f"{what} overflow: more than {cap:,} elements"
        if self.subset is not None:
            message += f" (subgroup generated by indices {list(self.subset)})"
        super().__init__(message)


class DegreeMismatchError(ScgError, ValueError):
    """Permutations or groups acting on domains of different size."""


class FieldError(ScgError, ValueError):
    """Invalid field parameters or operands from different fields."""


class SingularVectorError(ScgError, ValueError):
    """Reflection requested in a vector v with B(v, v) = 0."""


class NotSggiError(ScgError, ValueError):
    """The operation needs a string group generated by involutions."""


class RankError(ScgError, ValueError):
    """Rank or target rank outside the range an operation accepts."""


class ReductionRefusedError(ScgError, ValueError):
    """Reduction of an input that is not a verified irreducible string C-group."""


class SearchTooLargeError(ScgError, ValueError):
    """Group order above the exhaustive search bound."""


class RepFileError(ScgError, ValueError):
    """Parse failure in a representation file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownExampleError(ScgError, KeyError):
    """Lookup of an example name that is not registered."""

    def __init__(self, name: str, known: Iterable[str]):
        self.name = name
        self.known = sorted(known)
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown example '{self.name}'; registered: {', '.join(self.known)}"


class ConfigError(ScgError, ValueError):
    """Invalid value in the environment configuration."""
