class AcdlabError(Exception):
    """Base class for every error raised by acdlab."""


class InputError(AcdlabError, ValueError):
    """Malformed or inconsistent user input (bad permutation, non-prime p, ...)."""


class SizeLimitError(AcdlabError):
    """A group closure grew past the configured element cap."""

    def __init__(self, cap: int, what: str = "group"):
        super().__init__(f"{what} exceeds the size cap of {cap} elements")
        self.cap = cap


class ConstructionError(AcdlabError):
    """A product construction did not produce the group it promised."""


class PreconditionError(AcdlabError):
    """The hypotheses of a structural check could not be verified."""


class InternalError(AcdlabError, RuntimeError):
    """A mathematical identity failed; this means a bug, not bad input."""
