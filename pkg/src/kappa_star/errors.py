"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KappaStarError(Exception):
    """Base class for all engine errors."""


class ContractError(KappaStarError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class ResolutionError(KappaStarError):
    """The declared grids do not resolve the requested object.

    ``axis`` names the offending axis (``"v"``, ``"beta"``, ``"s"``) when known.
    """

    def __init__(self, message: str, axis: str | None = None):
        super().__init__(message)
        self.axis = axis


class SupportOverflowError(ResolutionError):
    """A product's alpha-support does not fit inside the v-grid."""


class UsageError(KappaStarError):
    """Invalid user configuration; ``pointer`` is a JSON pointer into the config."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
